use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use crate::enumeration::count_nhat;
use crate::exactnum::{MPoly, Monomial, RowReducer, SparseRow};
use crate::scalar::GaussianRational;
use crate::DiffOp;

use super::{DeterminingError, SchrodingerSpec};

/// Polynomial symmetries `Q = Σ_{|α|≤q} b_α(r, t) ∂^α` with
/// `deg_r b_α ≤ deg_r`, `deg_t b_α ≤ deg_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryBasis {
    pub n: usize,
    pub q: u32,
    pub deg_r: u32,
    pub deg_t: u32,
    pub elements: Vec<DiffOp>,
}

impl SymmetryBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

pub fn default_deg_r(q: u32) -> u32 {
    q + 1
}

/// `N̂_q^n − 1`, saturating for very large counts.
pub fn default_deg_t(n: usize, q: u32) -> u32 {
    count_nhat(n as u32, q)
        .ok()
        .and_then(|v| v.to_u32())
        .map_or(u32::MAX, |v| v.saturating_sub(1))
}

/// Exact nullspace of `[L, Q] = 0` over the generic polynomial ansatz.
///
/// Every returned element is re-checked against `L` before returning.
pub fn solve_polynomial_ansatz(
    spec: &SchrodingerSpec,
    q: u32,
    deg_r: u32,
    deg_t: u32,
) -> Result<SymmetryBasis, DeterminingError> {
    let n = spec.n;
    let l = spec.build_l();
    let derivs = Monomial::enumerate(n, q, 0);
    let monos = Monomial::enumerate(n, deg_r, deg_t);
    let columns: Vec<(Monomial, Monomial)> = derivs
        .iter()
        .flat_map(|d| monos.iter().map(move |m| (d.clone(), m.clone())))
        .collect();

    let mut rows: BTreeMap<(Monomial, Monomial), SparseRow<GaussianRational>> = BTreeMap::new();
    for (col, (d, m)) in columns.iter().enumerate() {
        let e = DiffOp::from_term(d.clone(), MPoly::term(m.clone(), GaussianRational::one()));
        for (od, c) in l.commutator(&e)?.terms() {
            for (om, v) in c.terms() {
                rows.entry((od.clone(), om.clone()))
                    .or_default()
                    .insert(col, v.clone());
            }
        }
    }
    let mut red = RowReducer::new(columns.len());
    for row in rows.into_values() {
        red.push_row(row);
    }
    let elements: Vec<DiffOp> = red
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut op = DiffOp::zero(n);
            for ((d, m), c) in columns.iter().zip(v) {
                if !c.is_zero() {
                    op.add_term(d.clone(), MPoly::term(m.clone(), c));
                }
            }
            op
        })
        .collect();
    for op in &elements {
        if !l.commutator(op)?.is_zero() {
            return Err(DeterminingError::Verification(op.to_expr_string()));
        }
    }
    Ok(SymmetryBasis {
        n,
        q,
        deg_r,
        deg_t,
        elements,
    })
}

/// Time-independent symmetries, i.e. operators commuting with `H`.
pub fn restrict_time_independent(
    spec: &SchrodingerSpec,
    q: u32,
    deg_r: u32,
) -> Result<SymmetryBasis, DeterminingError> {
    if !spec.is_time_independent() {
        return Err(DeterminingError::TimeDependent);
    }
    solve_polynomial_ansatz(spec, q, deg_r, 0)
}

/// Whether the dimension is unchanged when `deg_r` grows by one.
pub fn ansatz_saturated(
    spec: &SchrodingerSpec,
    basis: &SymmetryBasis,
) -> Result<bool, DeterminingError> {
    let next = solve_polynomial_ansatz(spec, basis.q, basis.deg_r + 1, basis.deg_t)?;
    Ok(next.dim() == basis.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::span_contains;
    use crate::expr_io::parse_poly;
    use crate::scalar::gauss;

    fn poly(s: &str, n: usize) -> crate::Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn free_particle_first_order() {
        let b = solve_polynomial_ansatz(&SchrodingerSpec::free(1), 1, 2, 2).unwrap();
        assert_eq!(b.dim(), 3);
        let boost = DiffOp::multiplication(poly("x1", 1))
            .add(&DiffOp::partial(1, 0).mul_poly(&poly("t", 1)).scale(&gauss(0, 1)))
            .unwrap();
        let expected = [DiffOp::identity(1), DiffOp::partial(1, 0), boost];
        assert!(span_contains(&b.elements, &expected));
    }

    #[test]
    fn quartic_time_independent() {
        let spec = SchrodingerSpec::with_potential(1, poly("x1^4", 1)).unwrap();
        let b = restrict_time_independent(&spec, 2, 4).unwrap();
        assert_eq!(b.dim(), 2);
        let h = spec.build_h().unwrap();
        assert!(span_contains(&b.elements, &[DiffOp::identity(1), h]));
    }

    #[test]
    fn plane_rotations() {
        let b = restrict_time_independent(&SchrodingerSpec::free(2), 1, 2).unwrap();
        assert_eq!(b.dim(), 4);
        let rot = DiffOp::partial(2, 1)
            .mul_poly(&poly("x1", 2))
            .sub(&DiffOp::partial(2, 0).mul_poly(&poly("x2", 2)))
            .unwrap();
        assert!(span_contains(&b.elements, &[rot]));
    }

    #[test]
    fn default_bounds() {
        assert_eq!(default_deg_r(2), 3);
        assert_eq!(default_deg_t(1, 2), 5);
        assert_eq!(default_deg_t(3, 1), 9);
    }

    #[test]
    fn time_dependent_potential_rejected_for_restriction() {
        let spec = SchrodingerSpec::with_potential(1, poly("t*x1", 1)).unwrap();
        assert_eq!(
            restrict_time_independent(&spec, 1, 2),
            Err(DeterminingError::TimeDependent)
        );
        // 1, ∂ + it²/4 and a boost with cubic time dependence
        assert_eq!(solve_polynomial_ansatz(&spec, 1, 2, 3).unwrap().dim(), 3);
    }
}
