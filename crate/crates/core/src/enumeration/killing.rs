//! Polynomial generalized Killing tensors on flat space.
//!
//! A rank-`j`, order-`p` generalized Killing tensor is a symmetric tensor
//! field `F^{a1..aj}(r)` annihilated by the symmetrized `p`-fold gradient
//! `∂^{(a_{j+p}} … ∂^{a_{j+1}} F^{a1..aj)}`. The solver imposes that
//! condition on a generic polynomial ansatz and extracts the nullspace.

use std::collections::BTreeMap;

use crate::exactnum::{MPoly, Monomial, RowReducer, SparseRow};
use crate::scalar::Field;

/// Symmetric tensor keyed by the exponent vector of its sorted index tuple.
pub type Tensor<S> = BTreeMap<Monomial, MPoly<S>>;

#[derive(Clone, Debug, PartialEq)]
pub struct KillingBasis<S> {
    pub n: usize,
    pub rank: u32,
    pub order: u32,
    pub max_degree: u32,
    pub elements: Vec<Tensor<S>>,
}

impl<S> KillingBasis<S> {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Polynomial degree of every rank-`j`, order-`p` solution in dimension ≤ 4.
pub fn default_degree(rank: u32, order: u32) -> u32 {
    (rank + order).saturating_sub(1)
}

/// Weight of `∂^{γ−α} F_α` in the symmetrized gradient at `γ`: the number of
/// ordered index tuples whose first `j` entries form `α` and whose last `p`
/// entries form `γ − α`.
fn weight(alpha: &Monomial, gamma: &Monomial) -> u64 {
    alpha.multinomial() * gamma.sub(alpha).multinomial()
}

pub fn killing_basis<S: Field>(n: usize, rank: u32, order: u32, max_degree: u32) -> KillingBasis<S> {
    let alphas = Monomial::of_x_degree(n, rank);
    let gammas = Monomial::of_x_degree(n, rank + order);
    let monos = Monomial::enumerate(n, max_degree, 0);
    let ncols = alphas.len() * monos.len();

    let mut rows: BTreeMap<(usize, Monomial), SparseRow<S>> = BTreeMap::new();
    for (ai, alpha) in alphas.iter().enumerate() {
        for (mi, m) in monos.iter().enumerate() {
            let col = ai * monos.len() + mi;
            let unknown = MPoly::<S>::term(m.clone(), S::one());
            for (gi, gamma) in gammas.iter().enumerate() {
                if !gamma.dominates(alpha) {
                    continue;
                }
                let w = S::from_i64(weight(alpha, gamma) as i64);
                for (rm, c) in unknown.diff(&gamma.sub(alpha)).terms() {
                    let entry = rows
                        .entry((gi, rm.clone()))
                        .or_default()
                        .entry(col)
                        .or_insert_with(S::zero);
                    *entry += c.clone() * w.clone();
                }
            }
        }
    }
    let mut red = RowReducer::new(ncols);
    for (_, row) in rows {
        red.push_row(row);
    }
    let elements = red
        .nullspace()
        .into_iter()
        .map(|v| {
            alphas
                .iter()
                .enumerate()
                .map(|(ai, alpha)| {
                    let entry = MPoly::from_terms(
                        n,
                        monos
                            .iter()
                            .enumerate()
                            .map(|(mi, m)| (m.clone(), v[ai * monos.len() + mi].clone())),
                    );
                    (alpha.clone(), entry)
                })
                .collect()
        })
        .collect();
    KillingBasis {
        n,
        rank,
        order,
        max_degree,
        elements,
    }
}

/// `∂^{(a_{j+p}} … ∂^{a_{j+1}} F^{a1..aj)}` evaluated by brute force over all
/// ordered index tuples (up to the positive normalization `1/(j+p)!`).
pub fn symmetrized_gradient<S: Field>(n: usize, rank: u32, order: u32, f: &Tensor<S>) -> Tensor<S> {
    let len = (rank + order) as usize;
    let mut out: Tensor<S> = BTreeMap::new();
    let total = n.pow(len as u32);
    for code in 0..total {
        let mut tuple = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            tuple.push(c % n);
            c /= n;
        }
        let mut head = vec![0u32; n];
        for &a in &tuple[..rank as usize] {
            head[a] += 1;
        }
        let mut value = f
            .get(&Monomial::from_x(head))
            .cloned()
            .unwrap_or_else(|| MPoly::zero(n));
        for &a in &tuple[rank as usize..] {
            value = value.diff_x(a);
        }
        let mut key = vec![0u32; n];
        for &a in &tuple {
            key[a] += 1;
        }
        out.entry(Monomial::from_x(key))
            .or_insert_with(|| MPoly::zero(n))
            .add_assign_ref(&value);
    }
    out
}

/// Dimensions at `max_degree` and `max_degree + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub dim: usize,
    pub dim_next: usize,
}

impl Saturation {
    pub fn saturated(&self) -> bool {
        self.dim == self.dim_next
    }
}

pub fn killing_saturation<S: Field>(n: usize, rank: u32, order: u32, max_degree: u32) -> Saturation {
    Saturation {
        dim: killing_basis::<S>(n, rank, order, max_degree).dim(),
        dim_next: killing_basis::<S>(n, rank, order, max_degree + 1).dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{count_k, count_s};
    use crate::scalar::Rational;

    fn dim(n: usize, j: u32, p: u32, d: u32) -> usize {
        killing_basis::<Rational>(n, j, p, d).dim()
    }

    #[test]
    fn scalar_ode_case() {
        for q in 0..5 {
            let b = killing_basis::<Rational>(1, 0, q + 1, q);
            assert_eq!(b.dim(), q as usize + 1);
            // ascending degree basis: 1, x, …, x^q up to scaling
            for (k, e) in b.elements.iter().enumerate() {
                let entry = &e[&Monomial::one(1)];
                assert_eq!(entry.len(), 1);
                assert_eq!(entry.degree(), Some(k as u32));
            }
        }
    }

    #[test]
    fn plane_killing_vectors() {
        assert_eq!(dim(2, 1, 1, 1), 3);
        assert_eq!(dim(2, 1, 1, 1) as u64, u64::try_from(count_k(2, 1).unwrap()).unwrap());
    }

    #[test]
    fn rank_two_in_space() {
        assert_eq!(dim(3, 2, 1, 2), 20);
        assert_eq!(dim(3, 2, 1, 2) as u64, u64::try_from(count_k(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn basis_elements_solve_equation() {
        let b = killing_basis::<Rational>(2, 2, 2, 3);
        assert_eq!(b.dim() as u64, u64::try_from(count_s(2, 3, 2).unwrap()).unwrap());
        for e in &b.elements {
            let r = symmetrized_gradient(2, 2, 2, e);
            assert!(r.values().all(MPoly::is_empty));
        }
    }

    #[test]
    fn saturates_above_default_degree() {
        let s = killing_saturation::<Rational>(2, 1, 2, default_degree(1, 2));
        assert!(s.saturated());
        assert_eq!(s.dim, 8);
    }
}
