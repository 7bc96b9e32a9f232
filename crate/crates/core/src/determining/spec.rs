use num_traits::{One, Zero};

use crate::diffop::DiffOperator;
use crate::expr_io::parse_poly;
use crate::scalar::{rat, GaussianRational, Rational};
use crate::{DiffOp, Poly};

use super::DeterminingError;

/// Potentials of `L = i∂t − ½((p − eA)² + V)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchrodingerSpec {
    pub n: usize,
    pub v: Poly,
    /// Empty means `A = 0`.
    pub a: Vec<Poly>,
    pub e: Rational,
}

impl SchrodingerSpec {
    pub fn new(n: usize, v: Poly, a: Vec<Poly>, e: Rational) -> Result<Self, DeterminingError> {
        if n == 0 {
            return Err(DeterminingError::Dimension);
        }
        if !a.is_empty() && a.len() != n {
            return Err(DeterminingError::VectorPotentialLength {
                expected: n,
                found: a.len(),
            });
        }
        for p in std::iter::once(&v).chain(&a) {
            if p.nvars() != n {
                return Err(DeterminingError::Arity {
                    expected: n,
                    found: p.nvars(),
                });
            }
        }
        Ok(SchrodingerSpec { n, v, a, e })
    }

    /// Free particle in `n` dimensions.
    pub fn free(n: usize) -> Self {
        SchrodingerSpec {
            n,
            v: Poly::zero(n),
            a: Vec::new(),
            e: Rational::one(),
        }
    }

    pub fn with_potential(n: usize, v: Poly) -> Result<Self, DeterminingError> {
        Self::new(n, v, Vec::new(), Rational::one())
    }

    /// Parses `V` and the components of `A` from source text.
    pub fn parse(n: usize, v: &str, a: &[String], e: Rational) -> Result<Self, DeterminingError> {
        let v = parse_poly(v, n)?;
        let a = a
            .iter()
            .map(|s| parse_poly(s, n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, v, a, e)
    }

    pub fn is_time_independent(&self) -> bool {
        self.v.is_t_free() && self.a.iter().all(Poly::is_t_free)
    }

    pub fn has_vector_potential(&self) -> bool {
        self.a.iter().any(|p| !p.is_empty())
    }

    fn kinetic_and_potential(&self) -> DiffOp {
        let n = self.n;
        let e = GaussianRational::new(self.e.clone(), Rational::zero());
        let mut sum = DiffOp::multiplication(self.v.clone());
        for k in 0..n {
            let mut pi = DiffOp::momentum(n, k);
            if let Some(ak) = self.a.get(k) {
                pi = pi
                    .sub(&DiffOp::multiplication(ak.scale(&e)))
                    .expect("same arity");
            }
            sum = sum.add(&pi.compose(&pi).expect("same arity")).expect("same arity");
        }
        sum.scale(&half())
    }

    /// `H = ½((p − eA)² + V)`.
    pub fn build_h(&self) -> Result<DiffOp, DeterminingError> {
        if !self.is_time_independent() {
            return Err(DeterminingError::TimeDependent);
        }
        Ok(self.kinetic_and_potential())
    }

    /// `L = i∂t − ½((p − eA)² + V)`.
    pub fn build_l(&self) -> DiffOp {
        DiffOperator::partial_t(self.n)
            .scale(&GaussianRational::i())
            .sub(&self.kinetic_and_potential())
            .expect("same arity")
    }
}

fn half() -> GaussianRational {
    GaussianRational::new(rat(1, 2), Rational::zero())
}

pub fn build_h(spec: &SchrodingerSpec) -> Result<DiffOp, DeterminingError> {
    spec.build_h()
}

pub fn build_l(spec: &SchrodingerSpec) -> DiffOp {
    spec.build_l()
}
