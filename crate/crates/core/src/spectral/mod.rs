//! Spectral analysis of `C ↦ −i[H, C]` for time-independent `H`: invariant
//! subspace, Jordan chains, exponential-polynomial symmetries, and the
//! existence test for time-dependent symmetries.

mod adjoint;
mod jordan;
mod space;
mod verdict;

pub use adjoint::{adjoint_apply, invariant_subspace, AdjointAnalysis};
pub use jordan::{
    all_eigen_data, all_symmetries, assemble, eigen_data, jordan_chains, EigenData,
    SymmetryChain,
};
pub use space::{build_operator_space, OperatorSpace};
pub use verdict::{
    find_mastersymmetries, theorem3_decide, EigenWitness, NilpotentWitness, Theorem3Verdict,
};

use thiserror::Error;

use crate::determining::{DeterminingError, SchrodingerSpec};
use crate::diffop::{span_dim, DiffOpError};
use crate::scalar::{Field, GaussianRational};
use crate::ExpPolyOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("hamiltonian must be time-independent")]
    TimeDependentHamiltonian,
    #[error("commutator leaves the ambient operator space")]
    AmbientOverflow,
    #[error("{} is not an eigenvalue", .0.to_expr_string())]
    NotEigenvalue(Box<GaussianRational>),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Operator(#[from] DiffOpError),
    #[error(transparent)]
    Spec(#[from] DeterminingError),
}

pub fn default_degree(q: u32) -> u32 {
    q + 1
}

/// Builds `H` from `spec` and analyses it on the space of order `q`,
/// coefficient degree `max_degree`.
pub fn analyze(spec: &SchrodingerSpec, q: u32, max_degree: u32) -> Result<AdjointAnalysis, SpectralError> {
    let h = spec.build_h()?;
    invariant_subspace(&h, OperatorSpace::new(spec.n, q, max_degree))
}

/// Whether the invariant subspace keeps its dimension at `max_degree + 1`.
pub fn spectral_saturated(analysis: &AdjointAnalysis) -> Result<bool, SpectralError> {
    let s = &analysis.space;
    let next = invariant_subspace(&analysis.h, OperatorSpace::new(s.n, s.q, s.max_degree + 1))?;
    Ok(next.dim() == analysis.dim())
}

/// Dimension of the span of single-exponent operators `e^{λt}B`; distinct
/// exponents are independent, so each `λ` is counted separately.
pub fn symmetry_span_dim(ops: &[ExpPolyOp]) -> usize {
    let mut by_lambda: Vec<(GaussianRational, Vec<crate::DiffOp>)> = Vec::new();
    for r in ops {
        assert!(r.branches().len() <= 1, "expected a single exponent");
        for (l, op) in r.branches() {
            match by_lambda.iter_mut().find(|(k, _)| k == l) {
                Some((_, v)) => v.push(op.clone()),
                None => by_lambda.push((l.clone(), vec![op.clone()])),
            }
        }
    }
    by_lambda.iter().map(|(_, v)| span_dim(v)).sum()
}
