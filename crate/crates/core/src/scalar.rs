//! Scalar fields used as polynomial and matrix coefficients.
//!
//! Everything in this crate is exact. The algebra (polynomials, matrices,
//! differential operators) is written against [`Field`]; the physics layers
//! additionally need an imaginary unit and use [`ComplexField`].

use std::fmt::Debug;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<BigRational>;

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Canonical text form, parseable by [`crate::expr_io::parse_poly`].
    fn to_expr_string(&self) -> String;

    /// True when the printed form is a single signed atom (no parentheses needed
    /// as a factor).
    fn is_atomic(&self) -> bool;
}

/// A field containing a square root of −1.
pub trait ComplexField: Field {
    fn imag_unit() -> Self;
    fn from_parts(re: Rational, im: Rational) -> Self;
    fn re_part(&self) -> Rational;
    fn im_part(&self) -> Rational;

    fn conj(&self) -> Self {
        Self::from_parts(self.re_part(), -self.im_part())
    }

    /// |z|² as a nonnegative rational.
    fn norm_sqr_rational(&self) -> Rational {
        let re = self.re_part();
        let im = self.im_part();
        &re * &re + &im * &im
    }
}

pub(crate) fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Field for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn to_expr_string(&self) -> String {
        rational_to_string(self)
    }

    fn is_atomic(&self) -> bool {
        true
    }
}

impl Field for GaussianRational {
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    fn to_expr_string(&self) -> String {
        let re = &self.re;
        let im = &self.im;
        if im.is_zero() {
            return rational_to_string(re);
        }
        let imag = if im.is_one() {
            "i".to_string()
        } else if (-im).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", rational_to_string(im))
        };
        if re.is_zero() {
            return imag;
        }
        if im.is_negative() {
            format!("({}-{})", rational_to_string(re), &imag[1..])
        } else {
            format!("({}+{})", rational_to_string(re), imag)
        }
    }

    fn is_atomic(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }
}

impl ComplexField for GaussianRational {
    fn imag_unit() -> Self {
        Complex::new(Rational::zero(), Rational::one())
    }

    fn from_parts(re: Rational, im: Rational) -> Self {
        Complex::new(re, im)
    }

    fn re_part(&self) -> Rational {
        self.re.clone()
    }

    fn im_part(&self) -> Rational {
        self.im.clone()
    }
}

/// Convenience constructor `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for `re + im·i` with integer parts.
pub fn gauss(re: i64, im: i64) -> GaussianRational {
    Complex::new(rat(re, 1), rat(im, 1))
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
