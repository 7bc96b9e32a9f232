use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

use super::ExactError;

/// Exponent vector over the spatial variables `x1..xn` plus time `t`.
///
/// The same layout doubles as a derivative multi-index for differential
/// operators. Ordering is graded lexicographic with `x1 > … > xn > t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    t: u32,
}

impl Monomial {
    pub fn new(x: Vec<u32>, t: u32) -> Self {
        Monomial { x, t }
    }

    pub fn one(n: usize) -> Self {
        Monomial { x: vec![0; n], t: 0 }
    }

    /// `x_a` for a zero-based index `a`.
    pub fn var(n: usize, a: usize) -> Self {
        let mut x = vec![0; n];
        x[a] = 1;
        Monomial { x, t: 0 }
    }

    pub fn t_var(n: usize) -> Self {
        Monomial { x: vec![0; n], t: 1 }
    }

    pub fn from_x(x: Vec<u32>) -> Self {
        Monomial { x, t: 0 }
    }

    pub fn nvars(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn degree(&self) -> u32 {
        self.x_degree() + self.t
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.t == 0 && self.x.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.x.len(), other.x.len());
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            t: self.t + other.t,
        }
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Monomial) -> bool {
        self.t >= other.t && self.x.iter().zip(&other.x).all(|(a, b)| a >= b)
    }

    /// Componentwise difference; caller guarantees `self.dominates(other)`.
    pub fn sub(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect(),
            t: self.t - other.t,
        }
    }

    pub fn with_t(&self, t: u32) -> Monomial {
        Monomial { x: self.x.clone(), t }
    }

    pub fn without_t(&self) -> Monomial {
        self.with_t(0)
    }

    /// All exponent vectors `γ` with `γ <= self` componentwise, ascending.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.x.len())];
        for (a, &e) in self.x.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                for k in 0..=e {
                    let mut m = m.clone();
                    m.x[a] = k;
                    next.push(m);
                }
            }
            out = next;
        }
        let mut next = Vec::with_capacity(out.len() * (self.t as usize + 1));
        for m in &out {
            for k in 0..=self.t {
                next.push(m.with_t(k));
            }
        }
        next.sort();
        next
    }

    /// Product of binomials `Π C(self_i, other_i)`.
    pub fn binomial(&self, other: &Monomial) -> u64 {
        let mut acc = binom(self.t, other.t);
        for (a, b) in self.x.iter().zip(&other.x) {
            acc *= binom(*a, *b);
        }
        acc
    }

    /// Multinomial `|α|! / Π α_i!` over the spatial part.
    pub fn multinomial(&self) -> u64 {
        let mut acc = 1u64;
        let mut total = 0u32;
        for &e in &self.x {
            total += e;
            acc *= binom(total, e);
        }
        acc
    }

    /// Exponent vectors of `n` spatial variables with total degree `<= max_x`,
    /// times `t^k` for `k <= max_t`, in ascending order.
    pub fn enumerate(n: usize, max_x: u32, max_t: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for xs in exponent_vectors(n, max_x) {
            for k in 0..=max_t {
                out.push(Monomial { x: xs.clone(), t: k });
            }
        }
        out.sort();
        out
    }

    /// Spatial exponent vectors with total degree exactly `deg`, ascending.
    pub fn of_x_degree(n: usize, deg: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = exponent_vectors(n, deg)
            .into_iter()
            .filter(|x| x.iter().sum::<u32>() == deg)
            .map(Monomial::from_x)
            .collect();
        out.sort();
        out
    }

    pub(crate) fn write_factors(&self, out: &mut Vec<String>, x_name: &str, t_name: &str) {
        for (a, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push(format!("{x_name}{}", a + 1)),
                e => out.push(format!("{x_name}{}^{e}", a + 1)),
            }
        }
        match self.t {
            0 => {}
            1 => out.push(t_name.to_string()),
            e => out.push(format!("{t_name}^{e}")),
        }
    }
}

fn binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

fn exponent_vectors(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for e in 0..=(max_total - used) {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.t.cmp(&other.t))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        self.write_factors(&mut parts, "x", "t");
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Multivariate polynomial in `x1..xn` and `t`.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<S> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Field> MPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `x_a`, zero-based `a`.
    pub fn var(nvars: usize, a: usize) -> Self {
        Self::term(Monomial::var(nvars, a), S::one())
    }

    pub fn t_var(nvars: usize) -> Self {
        Self::term(Monomial::t_var(nvars), S::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree in all variables; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::t).max().unwrap_or(0)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|m| m.t() == 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &MPoly<S>) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &MPoly<S>, c: &S) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &(-S::one()));
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    fn check_arity(&self, other: &Self) -> Result<(), ExactError> {
        if self.nvars != other.nvars {
            return Err(ExactError::VariableCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// ∂/∂x_a, zero-based `a`.
    pub fn diff_x(&self, a: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.x[a];
            if e > 0 {
                let mut m2 = m.clone();
                m2.x[a] -= 1;
                out.add_term(m2, c.clone() * S::from_i64(e as i64));
            }
        }
        out
    }

    /// ∂/∂t.
    pub fn diff_t(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.t > 0 {
                out.add_term(m.with_t(m.t - 1), c.clone() * S::from_i64(m.t as i64));
            }
        }
        out
    }

    /// Mixed partial ∂^β where `β` is read as a derivative multi-index.
    pub fn diff(&self, beta: &Monomial) -> Self {
        let mut out = Self::zero(self.nvars);
        'terms: for (m, c) in &self.terms {
            if !m.dominates(beta) {
                continue 'terms;
            }
            let mut factor: i64 = 1;
            for (e, b) in m.x.iter().zip(&beta.x) {
                for k in 0..*b {
                    factor *= (*e - k) as i64;
                }
            }
            for k in 0..beta.t {
                factor *= (m.t - k) as i64;
            }
            out.add_term(m.sub(beta), c.clone() * S::from_i64(factor));
        }
        out
    }

    /// Exact division by a nonzero scalar.
    pub fn div_scalar(&self, c: &S) -> Self {
        self.scale(&c.inv())
    }

    pub fn map_coeffs<T: Field>(&self, f: impl Fn(&S) -> T) -> MPoly<T> {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Substitutes `t = 0`.
    pub fn at_t_zero(&self) -> Self {
        MPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.t == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Evaluates every variable at a scalar point `(x1..xn, t)`.
    pub fn eval(&self, x: &[S], t: &S) -> S {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &e) in x.iter().zip(&m.x) {
                for _ in 0..e {
                    v *= xi.clone();
                }
            }
            for _ in 0..m.t {
                v *= t.clone();
            }
            acc += v;
        }
        acc
    }

    /// Canonical text; terms in descending monomial order.
    pub fn to_expr_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let term = format_term(m, c);
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn format_term<S: Field>(m: &Monomial, c: &S) -> String {
    let mut factors = Vec::new();
    m.write_factors(&mut factors, "x", "t");
    if factors.is_empty() {
        return c.to_expr_string();
    }
    let mono = factors.join("*");
    if c.is_one() {
        mono
    } else if (-c.clone()).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", c.to_expr_string())
    }
}

impl<S: Field> fmt::Display for MPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl<'a, S: Field> Add<&'a MPoly<S>> for &'a MPoly<S> {
    type Output = MPoly<S>;
    fn add(self, rhs: &'a MPoly<S>) -> MPoly<S> {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a, S: Field> Sub<&'a MPoly<S>> for &'a MPoly<S> {
    type Output = MPoly<S>;
    fn sub(self, rhs: &'a MPoly<S>) -> MPoly<S> {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a, S: Field> Mul<&'a MPoly<S>> for &'a MPoly<S> {
    type Output = MPoly<S>;
    fn mul(self, rhs: &'a MPoly<S>) -> MPoly<S> {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl<S: Field> Add for MPoly<S> {
    type Output = MPoly<S>;
    fn add(mut self, rhs: MPoly<S>) -> MPoly<S> {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<S: Field> Sub for MPoly<S> {
    type Output = MPoly<S>;
    fn sub(self, rhs: MPoly<S>) -> MPoly<S> {
        &self - &rhs
    }
}

impl<S: Field> Mul for MPoly<S> {
    type Output = MPoly<S>;
    fn mul(self, rhs: MPoly<S>) -> MPoly<S> {
        &self * &rhs
    }
}

impl<S: Field> Neg for MPoly<S> {
    type Output = MPoly<S>;
    fn neg(self) -> MPoly<S> {
        self.scale(&(-S::one()))
    }
}

impl<S: Field> Neg for &MPoly<S> {
    type Output = MPoly<S>;
    fn neg(self) -> MPoly<S> {
        self.scale(&(-S::one()))
    }
}

/// Binary polynomial operations with an arity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<S: Field>(a: &MPoly<S>, b: &MPoly<S>, op: PolyOp) -> Result<MPoly<S>, ExactError> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, rat, GaussianRational, Rational};
    use num_traits::Zero;

    type P = MPoly<GaussianRational>;

    fn x(n: usize, a: usize) -> P {
        P::var(n, a)
    }

    #[test]
    fn difference_of_squares() {
        let t = P::t_var(1);
        let lhs = &(&x(1, 0) + &t) * &(&x(1, 0) - &t);
        let rhs = &(&x(1, 0) * &x(1, 0)) - &(&t * &t);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_expr_string(), "x1^2 - t^2");
    }

    #[test]
    fn scale_by_zero_is_empty() {
        let p = x(1, 0).pow(2).scale(&GaussianRational::zero());
        assert!(p.is_empty());
        assert_eq!(p, P::zero(1));
    }

    #[test]
    fn square_of_sum() {
        let s = &x(2, 0) + &x(2, 1);
        let sq = &s * &s;
        let mut expected = x(2, 0).pow(2);
        expected.add_scaled(&(&x(2, 0) * &x(2, 1)), &gauss(2, 0));
        expected = &expected + &x(2, 1).pow(2);
        assert_eq!(sq, expected);
        assert_eq!(sq.to_expr_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn arity_mismatch_is_error() {
        let err = poly_arith(&x(1, 0), &x(2, 0), PolyOp::Add).unwrap_err();
        assert_eq!(err, ExactError::VariableCount { left: 1, right: 2 });
    }

    #[test]
    fn power_rule() {
        let x1 = x(1, 0);
        let t = P::t_var(1);
        let p = &x1.pow(2) * &t;
        assert_eq!(p.diff_x(0), (&x1 * &t).scale(&gauss(2, 0)));
        assert!(x1.pow(2).diff_t().is_empty());

        let q = &x(2, 0) * &x(2, 1).pow(3);
        assert_eq!(q.diff_x(1), (&x(2, 0) * &x(2, 1).pow(2)).scale(&gauss(3, 0)));
    }

    #[test]
    fn mixed_diff_matches_iterated() {
        let p = &(&x(2, 0).pow(3) * &x(2, 1).pow(2)) * &P::t_var(2).pow(2);
        let beta = Monomial::new(vec![2, 1], 1);
        assert_eq!(p.diff(&beta), p.diff_x(0).diff_x(0).diff_x(1).diff_t());
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![1, 0], 0);
        let b = Monomial::new(vec![0, 1], 0);
        let t = Monomial::new(vec![0, 0], 1);
        let sq = Monomial::new(vec![0, 0], 2);
        assert!(a > b && b > t);
        assert!(sq > a);
        let all = Monomial::enumerate(2, 1, 1);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn generic_over_rationals() {
        let p: MPoly<Rational> = MPoly::var(1, 0).pow(3).scale(&rat(1, 3));
        assert_eq!(p.diff_x(0), MPoly::var(1, 0).pow(2));
        assert_eq!(p.to_expr_string(), "1/3*x1^3");
    }

    #[test]
    fn multinomials() {
        assert_eq!(Monomial::from_x(vec![2, 1]).multinomial(), 3);
        assert_eq!(Monomial::from_x(vec![1, 1, 1]).multinomial(), 6);
        assert_eq!(Monomial::new(vec![2, 1], 1).binomial(&Monomial::new(vec![1, 1], 0)), 2);
    }
}
