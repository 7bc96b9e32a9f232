use crate::scalar::{ComplexField, Field};

use super::{DiffOpError, DiffOperator};

/// `Σ_λ e^{λt} · B_λ` where each `B_λ` may depend polynomially on `t`.
///
/// Branch exponents are pairwise distinct; zero branches are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolyOperator<S> {
    n: usize,
    branches: Vec<(S, DiffOperator<S>)>,
}

impl<S: Field> ExpPolyOperator<S> {
    pub fn zero(n: usize) -> Self {
        ExpPolyOperator {
            n,
            branches: Vec::new(),
        }
    }

    pub fn single(lambda: S, op: DiffOperator<S>) -> Self {
        let mut out = Self::zero(op.n());
        out.add_branch(lambda, op);
        out
    }

    /// A plain operator, i.e. the branch `λ = 0`.
    pub fn polynomial(op: DiffOperator<S>) -> Self {
        Self::single(S::zero(), op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn branches(&self) -> &[(S, DiffOperator<S>)] {
        &self.branches
    }

    pub fn is_zero(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn add_branch(&mut self, lambda: S, op: DiffOperator<S>) {
        assert_eq!(op.n(), self.n, "arity mismatch");
        if let Some(pos) = self.branches.iter().position(|(l, _)| *l == lambda) {
            let merged = self.branches[pos].1.add(&op).expect("same arity");
            if merged.is_zero() {
                self.branches.remove(pos);
            } else {
                self.branches[pos].1 = merged;
            }
        } else if !op.is_zero() {
            self.branches.push((lambda, op));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, op) in &other.branches {
            out.add_branch(l.clone(), op.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (l, op) in &self.branches {
            out.add_branch(l.clone(), op.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-S::one())))
    }

    /// `(λ, B) ↦ (λ, λB + ∂B/∂t)`.
    pub fn time_derivative(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (l, op) in &self.branches {
            let d = op
                .scale(l)
                .add(&op.coeff_time_derivative())
                .expect("same arity");
            out.add_branch(l.clone(), d);
        }
        out
    }

    /// Branchwise `[h, B]` for a time-independent `h`.
    pub fn commutator_with(&self, h: &DiffOperator<S>) -> Result<Self, DiffOpError> {
        if !h.is_time_independent() {
            return Err(DiffOpError::TimeDependentHamiltonian);
        }
        let mut out = Self::zero(self.n);
        for (l, op) in &self.branches {
            out.add_branch(l.clone(), h.commutator(op)?);
        }
        Ok(out)
    }

    pub fn is_time_independent(&self) -> bool {
        self.branches
            .iter()
            .all(|(l, op)| l.is_zero() && op.is_time_independent())
    }
}

impl<S: ComplexField> ExpPolyOperator<S> {
    /// `i ∂R/∂t − [h, R]`; zero exactly when `R` is a symmetry of `i∂t − h`.
    pub fn symmetry_residual(&self, h: &DiffOperator<S>) -> Result<Self, DiffOpError> {
        let lhs = self.time_derivative().scale(&S::imag_unit());
        Ok(lhs.sub(&self.commutator_with(h)?))
    }

    pub fn to_expr_string(&self) -> String {
        if self.branches.is_empty() {
            return "0".to_string();
        }
        self.branches
            .iter()
            .map(|(l, op)| {
                if l.is_zero() {
                    op.to_expr_string()
                } else if l.is_one() {
                    format!("exp(t)*({})", op.to_expr_string())
                } else {
                    format!("exp({}*t)*({})", l.to_expr_string(), op.to_expr_string())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn exp_time_derivative<S: Field>(r: &ExpPolyOperator<S>) -> ExpPolyOperator<S> {
    r.time_derivative()
}

pub fn exp_commutator<S: Field>(
    h: &DiffOperator<S>,
    r: &ExpPolyOperator<S>,
) -> Result<ExpPolyOperator<S>, DiffOpError> {
    r.commutator_with(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::MPoly;
    use crate::scalar::{gauss, rat, GaussianRational};

    type Op = DiffOperator<GaussianRational>;
    type P = MPoly<GaussianRational>;
    type R = ExpPolyOperator<GaussianRational>;

    fn x() -> Op {
        Op::multiplication(P::var(1, 0))
    }

    fn p() -> Op {
        Op::momentum(1, 0)
    }

    fn free_h() -> Op {
        p().compose(&p()).unwrap().scale(&GaussianRational::new(rat(1, 2), rat(0, 1)))
    }

    #[test]
    fn boost_time_derivative() {
        let tp = p().mul_poly(&P::t_var(1));
        let r = R::polynomial(x().sub(&tp).unwrap());
        let d = exp_time_derivative(&r);
        assert_eq!(d, R::polynomial(p().scale(&gauss(-1, 0))));
        assert!(r.symmetry_residual(&free_h()).unwrap().is_zero());
    }

    #[test]
    fn exponential_branch_scales() {
        let c = x().add(&p().scale(&gauss(0, 1))).unwrap();
        let r = R::single(gauss(0, 1), c.clone());
        assert_eq!(exp_time_derivative(&r), R::single(gauss(0, 1), c.scale(&gauss(0, 1))));
        assert_eq!(r.to_expr_string(), "exp(i*t)*((1)*d1 + (x1))");
    }

    #[test]
    fn commutator_with_free_hamiltonian() {
        let r = R::polynomial(x());
        let got = exp_commutator(&free_h(), &r).unwrap();
        assert_eq!(got, R::polynomial(p().scale(&gauss(0, -1))));
    }

    #[test]
    fn rejects_time_dependent_h() {
        let h = x().mul_poly(&P::t_var(1));
        assert!(matches!(
            R::polynomial(x()).commutator_with(&h),
            Err(DiffOpError::TimeDependentHamiltonian)
        ));
    }

    #[test]
    fn branches_merge_and_cancel() {
        let mut r = R::single(gauss(0, 2), x());
        r.add_branch(gauss(0, 2), x().scale(&gauss(-1, 0)));
        assert!(r.is_zero());
    }
}
