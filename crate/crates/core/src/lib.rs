//! Exact computation of symmetry operators of the n-dimensional
//! Schrödinger equation
//!
//! ```text
//! L = i∂t − ½((p − eA)² + V),   p_a = −i∂_a
//! ```
//!
//! with polynomial scalar potential `V(r, t)` and vector potential `A(r)`.
//! Note the factor ½ in front of `V`.
//!
//! The algebra is generic over an exact [`scalar::Field`]; the aliases at the
//! crate root fix it to the Gaussian rationals, which is what every solver
//! path uses.

pub mod determining;
pub mod diffop;
pub mod enumeration;
pub mod exactnum;
pub mod expr_io;
pub mod scalar;
pub mod spectral;

pub use scalar::{ComplexField, Field, GaussianRational, Rational};

/// Polynomial in `x1..xn, t` over the Gaussian rationals.
pub type Poly = exactnum::MPoly<GaussianRational>;
/// Dense matrix over the Gaussian rationals.
pub type Matrix = exactnum::DenseMatrix<GaussianRational>;
/// Univariate polynomial in `s` over the Gaussian rationals.
pub type CharPoly = exactnum::UniPoly<GaussianRational>;
/// Linear differential operator with Gaussian-rational polynomial coefficients.
pub type DiffOp = diffop::DiffOperator<GaussianRational>;
/// Finite sum of `e^{λt}` times operators polynomial in `t`.
pub type ExpPolyOp = diffop::ExpPolyOperator<GaussianRational>;
/// Symmetric tensors `F^{a1..aj}`, `j = 0..q`.
pub type SymTensorSet = diffop::SymTensorSet<GaussianRational>;

/// Convention string embedded in every report.
pub const CONVENTION: &str = "L = i*dt - 1/2*((p-e*A)^2 + V)";
