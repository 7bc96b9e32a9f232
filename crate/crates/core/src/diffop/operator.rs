use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{MPoly, Monomial};
use crate::scalar::{ComplexField, Field};

use super::DiffOpError;

/// `Σ b_α(r, t) ∂^α` with coefficients standing left of the derivatives.
///
/// The multi-index `α` covers `x1..xn` and `t`; symmetry operators never
/// carry a `t`-derivative, the Schrödinger operator itself does.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<S> {
    n: usize,
    terms: BTreeMap<Monomial, MPoly<S>>,
}

impl<S: Field> DiffOperator<S> {
    pub fn zero(n: usize) -> Self {
        DiffOperator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::multiplication(MPoly::one(n))
    }

    pub fn scalar(n: usize, c: S) -> Self {
        Self::multiplication(MPoly::constant(n, c))
    }

    pub fn multiplication(f: MPoly<S>) -> Self {
        Self::from_term(Monomial::one(f.nvars()), f)
    }

    pub fn from_term(deriv: Monomial, coeff: MPoly<S>) -> Self {
        assert_eq!(deriv.nvars(), coeff.nvars(), "arity mismatch");
        let mut op = Self::zero(coeff.nvars());
        op.add_term(deriv, coeff);
        op
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, MPoly<S>)>) -> Self {
        let mut op = Self::zero(n);
        for (d, c) in terms {
            op.add_term(d, c);
        }
        op
    }

    /// ∂/∂x_a, zero-based.
    pub fn partial(n: usize, a: usize) -> Self {
        Self::from_term(Monomial::var(n, a), MPoly::one(n))
    }

    /// ∂/∂t.
    pub fn partial_t(n: usize) -> Self {
        Self::from_term(Monomial::t_var(n), MPoly::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Terms in ascending derivative order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &MPoly<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deriv: &Monomial) -> MPoly<S> {
        self.terms
            .get(deriv)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order, `t` included.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest spatial derivative order.
    pub fn x_order(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    pub fn has_t_derivative(&self) -> bool {
        self.terms.keys().any(|d| d.t() > 0)
    }

    /// No `t` in any coefficient and no `∂t`.
    pub fn is_time_independent(&self) -> bool {
        !self.has_t_derivative() && self.terms.values().all(MPoly::is_t_free)
    }

    pub fn coeff_x_degree(&self) -> u32 {
        self.terms.values().map(MPoly::x_degree).max().unwrap_or(0)
    }

    pub fn coeff_t_degree(&self) -> u32 {
        self.terms.values().map(MPoly::t_degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, deriv: Monomial, coeff: MPoly<S>) {
        assert_eq!(deriv.nvars(), self.n, "arity mismatch");
        if coeff.is_empty() {
            return;
        }
        match self.terms.entry(deriv) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&coeff);
                if e.get().is_empty() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), DiffOpError> {
        if self.n != other.n {
            return Err(DiffOpError::Dimension {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DiffOpError> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DiffOpError> {
        self.add(&other.scale(&(-S::one())))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(d, p)| (d.clone(), p.scale(c))))
    }

    /// Left multiplication by a function: `f·self`.
    pub fn mul_poly(&self, f: &MPoly<S>) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(d, p)| (d.clone(), f * p)))
    }

    /// Normal-form product `self ∘ other` via
    /// `∂^α ∘ f = Σ_{γ ≤ α} C(α, γ) (∂^γ f) ∂^{α−γ}`.
    pub fn compose(&self, other: &Self) -> Result<Self, DiffOpError> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (alpha, a) in &self.terms {
            let gammas = alpha.divisors();
            for (beta, b) in &other.terms {
                for gamma in &gammas {
                    let db = b.diff(gamma);
                    if db.is_empty() {
                        continue;
                    }
                    let weight = S::from_i64(alpha.binomial(gamma) as i64);
                    let coeff = (a * &db).scale(&weight);
                    out.add_term(alpha.sub(gamma).mul(beta), coeff);
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, DiffOpError> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `self ∘ other + other ∘ self`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self, DiffOpError> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// Coefficientwise ∂/∂t, i.e. `[∂t, self]`.
    pub fn coeff_time_derivative(&self) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(d, p)| (d.clone(), p.diff_t())))
    }

    /// Coefficientwise substitution `t = 0`.
    pub fn at_t_zero(&self) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(d, p)| (d.clone(), p.at_t_zero())))
    }

    pub fn map_coeffs<T: Field>(&self, f: impl Fn(&S) -> T) -> DiffOperator<T> {
        DiffOperator::from_terms(
            self.n,
            self.terms.iter().map(|(d, p)| (d.clone(), p.map_coeffs(&f))),
        )
    }

    /// `"(coeff)*d1^2*d2 + … + (coeff)"`, highest derivative first.
    pub fn to_expr_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| {
                let mut factors = Vec::new();
                d.write_factors(&mut factors, "d", "dt");
                if factors.is_empty() {
                    format!("({})", c.to_expr_string())
                } else {
                    format!("({})*{}", c.to_expr_string(), factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<S: ComplexField> DiffOperator<S> {
    /// `p_a = −i ∂_a`, zero-based.
    pub fn momentum(n: usize, a: usize) -> Self {
        Self::partial(n, a).scale(&(-S::imag_unit()))
    }
}

impl<S: Field> fmt::Display for DiffOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, GaussianRational};

    type Op = DiffOperator<GaussianRational>;
    type P = MPoly<GaussianRational>;

    fn x(n: usize, a: usize) -> Op {
        Op::multiplication(P::var(n, a))
    }

    fn d(n: usize, a: usize) -> Op {
        Op::partial(n, a)
    }

    #[test]
    fn one_step_leibniz() {
        let got = d(1, 0).compose(&x(1, 0)).unwrap();
        let want = x(1, 0).compose(&d(1, 0)).unwrap().add(&Op::identity(1)).unwrap();
        assert_eq!(got, want);
        assert_eq!(got.to_expr_string(), "(x1)*d1 + (1)");
    }

    #[test]
    fn momentum_squared() {
        let p = Op::momentum(1, 0);
        let pp = p.compose(&p).unwrap();
        assert_eq!(pp, d(1, 0).compose(&d(1, 0)).unwrap().scale(&gauss(-1, 0)));
    }

    #[test]
    fn two_step_leibniz() {
        let d2 = d(1, 0).compose(&d(1, 0)).unwrap();
        let x2 = Op::multiplication(P::var(1, 0).pow(2));
        let got = d2.compose(&x2).unwrap();
        assert_eq!(got.to_expr_string(), "(x1^2)*d1^2 + (4*x1)*d1 + (2)");
    }

    #[test]
    fn canonical_commutators() {
        let p = Op::momentum(1, 0);
        assert_eq!(
            p.commutator(&x(1, 0)).unwrap(),
            Op::scalar(1, gauss(0, -1))
        );
        let half = GaussianRational::new(crate::scalar::rat(1, 2), crate::scalar::rat(0, 1));
        let kinetic = p.compose(&p).unwrap().scale(&half);
        assert_eq!(kinetic.commutator(&x(1, 0)).unwrap(), p.scale(&gauss(0, -1)));
        let osc = kinetic
            .add(&Op::multiplication(P::var(1, 0).pow(2)).scale(&half))
            .unwrap();
        assert_eq!(osc.commutator(&x(1, 0)).unwrap(), p.scale(&gauss(0, -1)));
    }

    #[test]
    fn anticommutator_examples() {
        let p = Op::momentum(1, 0);
        let xp = x(1, 0).anticommutator(&p).unwrap();
        assert_eq!(xp.to_expr_string(), "(-2*i*x1)*d1 + (-i)");
        assert_eq!(Op::identity(1).anticommutator(&p).unwrap(), p.scale(&gauss(2, 0)));
        assert_eq!(
            p.anticommutator(&p).unwrap(),
            d(1, 0).compose(&d(1, 0)).unwrap().scale(&gauss(-2, 0))
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            x(1, 0).compose(&x(2, 0)),
            Err(DiffOpError::Dimension { left: 1, right: 2 })
        ));
    }

    #[test]
    fn time_derivative_term() {
        let n = 1;
        let dt = Op::partial_t(n);
        let tx = Op::multiplication(&P::t_var(n) * &P::var(n, 0));
        // [∂t, t x] = x
        assert_eq!(dt.commutator(&tx).unwrap(), x(1, 0));
        assert_eq!(tx.coeff_time_derivative(), x(1, 0));
        assert!(dt.has_t_derivative());
        assert!(!tx.is_time_independent());
    }
}
