//! Polynomial expression parsing and canonical text/JSON output.

pub mod json;
mod parser;

pub use parser::{parse_expr, parse_poly, ExprAst};

use std::fmt;

use crate::diffop::{DiffOperator, ExpPolyOperator};
use crate::scalar::ComplexField;

/// Syntax error at a character offset (zero-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Operators accepted by [`format_operator`].
pub enum OperatorRef<'a, S> {
    Plain(&'a DiffOperator<S>),
    Exp(&'a ExpPolyOperator<S>),
}

impl<'a, S> From<&'a DiffOperator<S>> for OperatorRef<'a, S> {
    fn from(op: &'a DiffOperator<S>) -> Self {
        OperatorRef::Plain(op)
    }
}

impl<'a, S> From<&'a ExpPolyOperator<S>> for OperatorRef<'a, S> {
    fn from(op: &'a ExpPolyOperator<S>) -> Self {
        OperatorRef::Exp(op)
    }
}

/// Canonical text: `(coeff)*d1^a*…` terms, highest derivative first;
/// momenta are always expanded into `d1..dn`.
pub fn format_operator<'a, S: ComplexField>(op: impl Into<OperatorRef<'a, S>>) -> String {
    match op.into() {
        OperatorRef::Plain(d) => d.to_expr_string(),
        OperatorRef::Exp(e) => e.to_expr_string(),
    }
}
