//! Linear differential operators with polynomial coefficients.

mod exppoly;
mod operator;
mod span;
mod symmetrized;

pub use exppoly::{exp_commutator, exp_time_derivative, ExpPolyOperator};
pub use operator::DiffOperator;
pub use span::{span_contains, span_dim, spans_equal};
pub use symmetrized::{expand_symmetrized, to_symmetrized, SymTensorSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffOpError {
    #[error("operators act in {left} and {right} dimensions")]
    Dimension { left: usize, right: usize },
    #[error("operator contains a time derivative")]
    TimeDerivative,
    #[error("hamiltonian must be time-independent")]
    TimeDependentHamiltonian,
}
