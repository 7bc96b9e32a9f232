//! The Schrödinger operator, its determining system, and the brute-force
//! polynomial-ansatz solver.

mod ansatz;
mod spec;
mod system;

pub use ansatz::{
    ansatz_saturated, default_deg_r, default_deg_t, restrict_time_independent,
    solve_polynomial_ansatz, SymmetryBasis,
};
pub use spec::{build_h, build_l, SchrodingerSpec};
pub use system::{
    generate_determining_system, DeterminingSystem, JsonAtom, JsonEquation, JsonSystem,
    LinearDiffExpr,
};

use thiserror::Error;

use crate::diffop::DiffOpError;
use crate::expr_io::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminingError {
    #[error("dimension must be at least 1")]
    Dimension,
    #[error("polynomial in {found} variables, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("vector potential has {found} components, expected {expected}")]
    VectorPotentialLength { expected: usize, found: usize },
    #[error("potentials must be time-independent here")]
    TimeDependent,
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Operator(#[from] DiffOpError),
    #[error("solution fails re-verification: {0}")]
    Verification(String),
}
