//! Nested-anticommutator presentation `Σ_j [...[F^{a1..aj}, p_a1]₊ ... p_aj]₊`.

use std::collections::BTreeMap;

use crate::exactnum::{MPoly, Monomial};
use crate::scalar::ComplexField;

use super::{DiffOpError, DiffOperator};

/// Symmetric tensors `F^{a1..aj}` for `j = 0..=q`.
///
/// Entries are keyed by the exponent vector of the sorted index tuple
/// (`F^{1,1,2}` ↦ `(2, 1)`); every key of each rank is present.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensorSet<S> {
    n: usize,
    ranks: Vec<BTreeMap<Monomial, MPoly<S>>>,
}

impl<S: ComplexField> SymTensorSet<S> {
    pub fn zero(n: usize, q: u32) -> Self {
        let ranks = (0..=q)
            .map(|j| {
                Monomial::of_x_degree(n, j)
                    .into_iter()
                    .map(|a| (a, MPoly::zero(n)))
                    .collect()
            })
            .collect();
        SymTensorSet { n, ranks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.ranks.len() as u32 - 1
    }

    pub fn rank(&self, j: u32) -> &BTreeMap<Monomial, MPoly<S>> {
        &self.ranks[j as usize]
    }

    pub fn get(&self, index: &Monomial) -> &MPoly<S> {
        &self.ranks[index.x_degree() as usize][index]
    }

    /// Sets the entry for the sorted index tuple `index` (exponent form).
    pub fn set(&mut self, index: Monomial, value: MPoly<S>) {
        assert_eq!(index.t(), 0, "tensor indices are spatial");
        let j = index.x_degree() as usize;
        let slot = self.ranks[j]
            .get_mut(&index)
            .expect("index within rank range");
        *slot = value;
    }

    /// Sets the entry for an unsorted tuple of zero-based indices.
    pub fn set_tuple(&mut self, tuple: &[usize], value: MPoly<S>) {
        let mut exps = vec![0u32; self.n];
        for &a in tuple {
            exps[a] += 1;
        }
        self.set(Monomial::from_x(exps), value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &MPoly<S>)> {
        self.ranks.iter().flat_map(|r| r.iter())
    }
}

/// `[...[F, p_a1]₊ ... p_aj]₊` for the multiset of indices `alpha`.
fn nested_anticommutator<S: ComplexField>(
    f: &MPoly<S>,
    alpha: &Monomial,
) -> Result<DiffOperator<S>, DiffOpError> {
    let n = f.nvars();
    let mut op = DiffOperator::multiplication(f.clone());
    for (a, &e) in alpha.x().iter().enumerate() {
        let p = DiffOperator::momentum(n, a);
        for _ in 0..e {
            op = op.anticommutator(&p)?;
        }
    }
    Ok(op)
}

fn expand_rank<S: ComplexField>(
    n: usize,
    rank: &BTreeMap<Monomial, MPoly<S>>,
) -> DiffOperator<S> {
    let mut out = DiffOperator::zero(n);
    for (alpha, f) in rank {
        if f.is_empty() {
            continue;
        }
        let weight = S::from_i64(alpha.multinomial() as i64);
        let op = nested_anticommutator(f, alpha).expect("same arity");
        out = out.add(&op.scale(&weight)).expect("same arity");
    }
    out
}

/// Plain `b`-form of `Σ_j [...[F^{a1..aj}, p_a1]₊ ... p_aj]₊` with the
/// summation running over all ordered index tuples.
pub fn expand_symmetrized<S: ComplexField>(f: &SymTensorSet<S>) -> DiffOperator<S> {
    let mut out = DiffOperator::zero(f.n);
    for rank in &f.ranks {
        out = out.add(&expand_rank(f.n, rank)).expect("same arity");
    }
    out
}

/// Inverts [`expand_symmetrized`] by peeling off ranks from the top down.
///
/// The top-order part of the rank-`j` contribution at `α` is
/// `(j!/α!)·2^j·(−i)^j·F_α ∂^α`.
pub fn to_symmetrized<S: ComplexField>(q_op: &DiffOperator<S>) -> Result<SymTensorSet<S>, DiffOpError> {
    if q_op.has_t_derivative() {
        return Err(DiffOpError::TimeDerivative);
    }
    let n = q_op.n();
    let q = q_op.x_order();
    let mut out = SymTensorSet::zero(n, q);
    let mut rest = q_op.clone();
    let minus_two_i = S::imag_unit() * S::from_i64(-2);
    for j in (0..=q).rev() {
        let mut lead = S::one();
        for _ in 0..j {
            lead *= minus_two_i.clone();
        }
        let mut rank = BTreeMap::new();
        for alpha in Monomial::of_x_degree(n, j) {
            let b = rest.coeff(&alpha);
            let denom = lead.clone() * S::from_i64(alpha.multinomial() as i64);
            rank.insert(alpha, b.div_scalar(&denom));
        }
        rest = rest.sub(&expand_rank(n, &rank))?;
        out.ranks[j as usize] = rank;
    }
    debug_assert!(rest.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, GaussianRational};

    type T = SymTensorSet<GaussianRational>;
    type P = MPoly<GaussianRational>;
    type Op = DiffOperator<GaussianRational>;

    #[test]
    fn order_zero_is_multiplication() {
        let mut f = T::zero(2, 0);
        let g = &P::var(2, 0) * &P::t_var(2);
        f.set(Monomial::one(2), g.clone());
        assert_eq!(expand_symmetrized(&f), Op::multiplication(g));
    }

    #[test]
    fn rank_one_examples() {
        let mut f = T::zero(1, 1);
        f.set(Monomial::var(1, 0), P::var(1, 0));
        let x = Op::multiplication(P::var(1, 0));
        let xp = x.anticommutator(&Op::momentum(1, 0)).unwrap();
        assert_eq!(expand_symmetrized(&f), xp);

        let mut g = T::zero(1, 1);
        g.set(Monomial::var(1, 0), P::one(1));
        let expanded = expand_symmetrized(&g);
        assert_eq!(expanded, Op::partial(1, 0).scale(&gauss(0, -2)));

        let back = to_symmetrized(&expanded).unwrap();
        assert_eq!(back, g);
        assert!(back.get(&Monomial::one(1)).is_empty());
    }

    #[test]
    fn entry_counts() {
        let f = T::zero(3, 3);
        let counts: Vec<usize> = (0..=3).map(|j| f.rank(j).len()).collect();
        assert_eq!(counts, vec![1, 3, 6, 10]);
    }

    #[test]
    fn mixed_rank_two_roundtrip() {
        let n = 2;
        let mut f = T::zero(n, 2);
        f.set_tuple(&[0, 1], &P::var(n, 0) * &P::var(n, 1));
        f.set_tuple(&[1, 1], P::var(n, 0).pow(2));
        f.set_tuple(&[0], P::t_var(n));
        f.set(Monomial::one(n), P::constant(n, gauss(3, 1)));
        let q = expand_symmetrized(&f);
        assert_eq!(q.x_order(), 2);
        assert_eq!(to_symmetrized(&q).unwrap(), f);
    }
}
