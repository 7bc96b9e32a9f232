use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactnum::{MPoly, Monomial, SparseRow};
use crate::scalar::GaussianRational;
use crate::DiffOp;

/// Time-independent operators `Σ_{|α|≤q} b_α(r) ∂^α` with `deg b_α ≤ D`.
///
/// Basis order is derivative-major, both keys ascending, so the identity
/// comes first.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpace {
    pub n: usize,
    pub q: u32,
    pub max_degree: u32,
    basis: Vec<(Monomial, Monomial)>,
    index: BTreeMap<(Monomial, Monomial), usize>,
}

impl OperatorSpace {
    pub fn new(n: usize, q: u32, max_degree: u32) -> Self {
        let monos = Monomial::enumerate(n, max_degree, 0);
        let basis: Vec<(Monomial, Monomial)> = Monomial::enumerate(n, q, 0)
            .into_iter()
            .flat_map(|d| monos.iter().map(move |m| (d.clone(), m.clone())))
            .collect();
        let index = basis.iter().cloned().zip(0..).collect();
        OperatorSpace {
            n,
            q,
            max_degree,
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(derivative, monomial)` of basis element `i`.
    pub fn key(&self, i: usize) -> &(Monomial, Monomial) {
        &self.basis[i]
    }

    pub fn index_of(&self, deriv: &Monomial, mono: &Monomial) -> Option<usize> {
        self.index.get(&(deriv.clone(), mono.clone())).copied()
    }

    pub fn element(&self, i: usize) -> DiffOp {
        let (d, m) = &self.basis[i];
        DiffOp::from_term(d.clone(), MPoly::term(m.clone(), GaussianRational::one()))
    }

    pub fn to_operator(&self, coords: &[GaussianRational]) -> DiffOp {
        assert_eq!(coords.len(), self.dim());
        let mut op = DiffOp::zero(self.n);
        for ((d, m), c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                op.add_term(d.clone(), MPoly::term(m.clone(), c.clone()));
            }
        }
        op
    }

    /// Sparse coordinates, or `None` when `op` has a term outside the space.
    pub fn sparse_coordinates(&self, op: &DiffOp) -> Option<SparseRow<GaussianRational>> {
        let mut out = SparseRow::new();
        for (d, c) in op.terms() {
            for (m, v) in c.terms() {
                out.insert(self.index_of(d, m)?, v.clone());
            }
        }
        Some(out)
    }

    pub fn coordinates(&self, op: &DiffOp) -> Option<Vec<GaussianRational>> {
        let sparse = self.sparse_coordinates(op)?;
        let mut dense = vec![GaussianRational::zero(); self.dim()];
        for (i, v) in sparse {
            dense[i] = v;
        }
        Some(dense)
    }
}

pub fn build_operator_space(n: usize, q: u32, max_degree: u32) -> OperatorSpace {
    OperatorSpace::new(n, q, max_degree)
}
