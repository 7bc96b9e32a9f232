//! Closed-form counting functions and the Killing-tensor solver that
//! cross-checks them.

mod counts;
mod killing;

pub use counts::{
    count_k, count_nhat, count_ntilde, count_ntilde_closed, count_s, CountTable, PROVEN_MAX_DIM,
};
pub use killing::{
    default_degree, killing_basis, killing_saturation, symmetrized_gradient, KillingBasis,
    Saturation, Tensor,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("dimension must be at least 1")]
    Dimension,
    #[error("rank {j} exceeds order {q}")]
    RankOutOfRange { j: u32, q: u32 },
    #[error("no polynomial closed form for dimension {n}")]
    NoClosedForm { n: u32 },
}
