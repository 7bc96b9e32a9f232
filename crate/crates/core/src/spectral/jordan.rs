use num_traits::{One, Zero};

use crate::exactnum::{MPoly, RowReducer};
use crate::scalar::{GaussianRational, Rational};
use crate::{DiffOp, ExpPolyOp, Matrix};

use super::{AdjointAnalysis, SpectralError};

/// `C₀ … C_m` with `(M − λ)C_l = C_{l+1}` and `(M − λ)C_m = 0`, assembled
/// into the symmetry `R = e^{λt} Σ_k t^k C_k / k!`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryChain {
    pub lambda: GaussianRational,
    pub ops: Vec<DiffOp>,
    pub r: ExpPolyOp,
}

impl SymmetryChain {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// One symmetry per suffix `C_l … C_m`.
    pub fn suffix_symmetries(&self) -> Vec<ExpPolyOp> {
        (0..self.ops.len())
            .map(|l| assemble(&self.lambda, &self.ops[l..]))
            .collect()
    }
}

/// `e^{λt} Σ_k t^k C_k / k!`.
pub fn assemble(lambda: &GaussianRational, ops: &[DiffOp]) -> ExpPolyOp {
    let n = ops.first().map_or(1, DiffOp::n);
    let mut sum = DiffOp::zero(n);
    let mut fact = Rational::one();
    for (k, c) in ops.iter().enumerate() {
        if k > 0 {
            fact *= Rational::from_integer((k as i64).into());
        }
        let tk = MPoly::t_var(n)
            .pow(k as u32)
            .scale(&GaussianRational::new(fact.recip(), Rational::zero()));
        sum = sum.add(&c.mul_poly(&tk)).expect("same arity");
    }
    ExpPolyOp::single(lambda.clone(), sum)
}

/// Jordan data of one eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    pub lambda: GaussianRational,
    pub multiplicity: usize,
    /// `dim ker (M − λ)^k` for `k = 1, 2, …` up to saturation.
    pub kernel_dims: Vec<usize>,
    pub chains: Vec<SymmetryChain>,
}

impl EigenData {
    pub fn symmetry_count(&self) -> usize {
        self.chains.iter().map(SymmetryChain::len).sum()
    }
}

/// Kernels of `N, N², …` until the dimension stops growing.
pub(crate) fn kernel_tower(n: &Matrix) -> Vec<Vec<Vec<GaussianRational>>> {
    let mut tower = Vec::new();
    let mut power = n.clone();
    loop {
        let ker = power.nullspace();
        if tower.last().is_some_and(|prev: &Vec<Vec<GaussianRational>>| prev.len() == ker.len()) {
            break;
        }
        let full = ker.len() == n.cols();
        tower.push(ker);
        if full {
            break;
        }
        power = power.mul(n).expect("square");
    }
    tower
}

/// Maximal set of independent chains at `λ`.
pub fn jordan_chains(
    analysis: &AdjointAnalysis,
    lambda: &GaussianRational,
) -> Result<Vec<SymmetryChain>, SpectralError> {
    Ok(eigen_data(analysis, lambda)?.chains)
}

pub fn eigen_data(analysis: &AdjointAnalysis, lambda: &GaussianRational) -> Result<EigenData, SpectralError> {
    let multiplicity = analysis
        .roots
        .roots
        .iter()
        .find(|(r, _)| r == lambda)
        .map(|(_, m)| *m)
        .ok_or_else(|| SpectralError::NotEigenvalue(Box::new(lambda.clone())))?;
    let dim = analysis.dim();
    let nmat = analysis.matrix.shift(lambda);
    let tower = kernel_tower(&nmat);

    // (chain length, head coordinates)
    let mut heads: Vec<(usize, Vec<GaussianRational>)> = Vec::new();
    for level in (1..=tower.len()).rev() {
        let mut red = RowReducer::new(dim);
        if level >= 2 {
            for v in &tower[level - 2] {
                red.push_dense(v);
            }
        }
        for (len, head) in &heads {
            let mut v = head.clone();
            for _ in 0..(len - level) {
                v = nmat.mul_vec(&v);
            }
            red.push_dense(&v);
        }
        for v in &tower[level - 1] {
            if red.push_dense(v) {
                heads.push((level, v.clone()));
            }
        }
    }

    let mut chains = Vec::new();
    for (len, head) in heads {
        let mut coords = vec![head];
        for _ in 1..len {
            let next = nmat.mul_vec(coords.last().expect("nonempty"));
            coords.push(next);
        }
        debug_assert!(nmat.mul_vec(coords.last().expect("nonempty")).iter().all(Zero::is_zero));
        let lifted0 = analysis.lift(&coords[0]);
        let pivot = lifted0
            .iter()
            .find(|c| !c.is_zero())
            .expect("chain head is nonzero")
            .inv();
        let ops: Vec<DiffOp> = coords
            .iter()
            .map(|c| analysis.operator(c).scale(&pivot))
            .collect();
        let r = assemble(lambda, &ops);
        if !r.symmetry_residual(&analysis.h)?.is_zero() {
            return Err(SpectralError::Verification(r.to_expr_string()));
        }
        chains.push(SymmetryChain {
            lambda: lambda.clone(),
            ops,
            r,
        });
    }
    let kernel_dims = tower.iter().map(Vec::len).collect();
    Ok(EigenData {
        lambda: lambda.clone(),
        multiplicity,
        kernel_dims,
        chains,
    })
}

/// Chains at every Gaussian-rational eigenvalue, in root order.
pub fn all_eigen_data(analysis: &AdjointAnalysis) -> Result<Vec<EigenData>, SpectralError> {
    analysis
        .roots
        .roots
        .iter()
        .map(|(l, _)| eigen_data(analysis, l))
        .collect()
}

/// Every chain suffix over every found eigenvalue.
pub fn all_symmetries(analysis: &AdjointAnalysis) -> Result<Vec<ExpPolyOp>, SpectralError> {
    Ok(all_eigen_data(analysis)?
        .iter()
        .flat_map(|e| e.chains.iter().flat_map(SymmetryChain::suffix_symmetries))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determining::SchrodingerSpec;
    use crate::expr_io::parse_poly;
    use crate::scalar::{gauss, Field};
    use crate::spectral::{analyze, symmetry_span_dim};

    fn oscillator() -> SchrodingerSpec {
        SchrodingerSpec::with_potential(1, parse_poly("x1^2", 1).unwrap()).unwrap()
    }

    #[test]
    fn galilei_boost_chain() {
        let a = analyze(&SchrodingerSpec::free(1), 1, 2).unwrap();
        let chains = jordan_chains(&a, &gauss(0, 0)).unwrap();
        let lens: Vec<usize> = chains.iter().map(SymmetryChain::len).collect();
        assert_eq!(lens, [2, 1]);
        let boost = &chains[0];
        assert_eq!(boost.ops[0].to_expr_string(), "(x1)");
        assert_eq!(boost.r.to_expr_string(), "(i*t)*d1 + (x1)");
        assert_eq!(chains[1].r.to_expr_string(), "(1)");
    }

    #[test]
    fn oscillator_ladder() {
        let a = analyze(&oscillator(), 1, 1).unwrap();
        let up = jordan_chains(&a, &gauss(0, 1)).unwrap();
        assert_eq!(up.len(), 1);
        assert_eq!(up[0].len(), 1);
        assert_eq!(up[0].r.to_expr_string(), "exp(i*t)*((1)*d1 + (x1))");
        assert!(matches!(
            jordan_chains(&a, &gauss(0, 2)),
            Err(SpectralError::NotEigenvalue(_))
        ));
    }

    #[test]
    fn oscillator_second_order_attains_bound() {
        let a = analyze(&oscillator(), 2, 3).unwrap();
        assert_eq!(a.dim(), 6);
        let data = all_eigen_data(&a).unwrap();
        let lambdas: Vec<String> = data.iter().map(|e| e.lambda.to_expr_string()).collect();
        assert_eq!(lambdas, ["-2*i", "-i", "0", "i", "2*i"]);
        let syms = all_symmetries(&a).unwrap();
        assert_eq!(syms.len(), 6);
        assert_eq!(symmetry_span_dim(&syms), 6);
    }

    #[test]
    fn chain_lengths_fill_generalized_eigenspace() {
        let a = analyze(&SchrodingerSpec::free(1), 2, 3).unwrap();
        let data = all_eigen_data(&a).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].symmetry_count(), a.dim());
        assert_eq!(data[0].kernel_dims, [3, 5, 6]);
    }
}
