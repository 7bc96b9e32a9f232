//! Exact arithmetic substrate: multivariate polynomials, univariate
//! polynomials, dense and sparse linear algebra, Gaussian-rational roots.

mod matrix;
mod poly;
mod roots;
mod unipoly;

pub use matrix::{dense_to_sparse, DenseMatrix, RowReducer, SpanBasis, SparseRow};
pub use poly::{poly_arith, MPoly, Monomial, PolyOp};
pub use roots::{gaussian_roots, RootSet};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomials over {left} and {right} spatial variables cannot be combined")]
    VariableCount { left: usize, right: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },
}
