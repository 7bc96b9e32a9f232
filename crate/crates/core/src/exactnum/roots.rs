//! Gaussian-rational roots of univariate polynomials.
//!
//! A root `u/v` in lowest terms over the Gaussian integers must have `u`
//! dividing the constant term and `v` dividing the leading term of the
//! integer-scaled polynomial, so a finite divisor search finds every one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{ComplexField, GaussianRational, Rational};

use super::unipoly::UniPoly;

/// Roots with multiplicities plus the factor that has no Gaussian-rational roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<(GaussianRational, usize)>,
    pub residual: UniPoly<GaussianRational>,
}

impl RootSet {
    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// `residual · Π (s − r)^m`.
    pub fn reassemble(&self) -> UniPoly<GaussianRational> {
        let mut acc = self.residual.clone();
        for (r, m) in &self.roots {
            acc = acc.mul(&UniPoly::linear(r).pow(*m));
        }
        acc
    }
}

pub fn gaussian_roots(p: &UniPoly<GaussianRational>) -> RootSet {
    assert!(!p.is_zero(), "root search on the zero polynomial");
    let mut found: Vec<GaussianRational> = Vec::new();

    let zero_mult = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        found.push(GaussianRational::zero());
    }
    let stripped = UniPoly::new(p.coeffs()[zero_mult..].to_vec());
    if stripped.degree() > 0 {
        let square_free = stripped.div_rem(&stripped.gcd(&stripped.derivative())).0;
        found.extend(nonzero_roots(&square_free));
    }
    found.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));

    let mut residual = p.clone();
    let mut roots = Vec::new();
    for r in found {
        let lin = UniPoly::linear(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = residual.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            residual = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        roots.push((r, mult));
    }
    RootSet { roots, residual }
}

fn nonzero_roots(p: &UniPoly<GaussianRational>) -> Vec<GaussianRational> {
    let ints = to_gaussian_integers(p);
    let c0 = ints.first().expect("nonzero").clone();
    let cd = ints.last().expect("nonzero").clone();
    let numerators = divisors(&c0);
    let denominators = divisors(&cd);
    let units = [
        GaussInt::new(1, 0),
        GaussInt::new(0, 1),
        GaussInt::new(-1, 0),
        GaussInt::new(0, -1),
    ];
    let mut roots: Vec<GaussianRational> = Vec::new();
    for v in &denominators {
        let v_inv = v.to_field().inv();
        for u in &numerators {
            for unit in &units {
                let cand = unit.mul(u).to_field() * v_inv.clone();
                if roots.contains(&cand) {
                    continue;
                }
                if p.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn new(re: i64, im: i64) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `self / d` when the quotient is a Gaussian integer.
    fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        if re.is_multiple_of(&n) && im.is_multiple_of(&n) {
            Some(GaussInt { re: re / &n, im: im / &n })
        } else {
            None
        }
    }

    fn to_field(&self) -> GaussianRational {
        GaussianRational::from_parts(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }
}

fn to_gaussian_integers(p: &UniPoly<GaussianRational>) -> Vec<GaussInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let scale = Rational::from_integer(lcm);
    p.coeffs()
        .iter()
        .map(|c| GaussInt {
            re: (&c.re * &scale).to_integer(),
            im: (&c.im * &scale).to_integer(),
        })
        .collect()
}

/// Distinct rational prime factors by trial division.
fn rational_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Gaussian primes lying over the rational prime `p`, up to units.
fn gaussian_primes_over(p: &BigInt) -> Vec<GaussInt> {
    if p == &BigInt::from(2) {
        return vec![GaussInt::new(1, 1)];
    }
    if (p % 4u32).to_u32() == Some(3) {
        return vec![GaussInt {
            re: p.clone(),
            im: BigInt::zero(),
        }];
    }
    let mut a = BigInt::one();
    while &a * &a < *p {
        let rest = p - &a * &a;
        let b = rest.sqrt();
        if &b * &b == rest {
            let pi = GaussInt { re: a.clone(), im: b.clone() };
            let pi_bar = GaussInt { re: a, im: -b };
            return vec![pi, pi_bar];
        }
        a += 1;
    }
    unreachable!("prime congruent to 1 mod 4 is a sum of two squares")
}

/// All divisors of a nonzero Gaussian integer, one per associate class.
fn divisors(z: &GaussInt) -> Vec<GaussInt> {
    let mut prime_powers: Vec<(GaussInt, u32)> = Vec::new();
    let mut rest = z.clone();
    for p in rational_prime_factors(&z.norm()) {
        for pi in gaussian_primes_over(&p) {
            let mut e = 0;
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                prime_powers.push((pi, e));
            }
        }
    }
    let mut out = vec![GaussInt::new(1, 0)];
    for (pi, e) in prime_powers {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&pi);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out
}
