use num_traits::Zero;

use crate::exactnum::RowReducer;
use crate::scalar::GaussianRational;
use crate::{DiffOp, ExpPolyOp};

use super::jordan::{assemble, kernel_tower};
use super::{AdjointAnalysis, SpectralError};

/// `e^{λt}K₀` with `[H, K₀] = iλK₀`, `λ ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenWitness {
    pub lambda: GaussianRational,
    pub k0: DiffOp,
    pub r: ExpPolyOp,
}

/// `K₀ + tK₁` with `[H, K₀] = iK₁`, `[H, K₁] = 0`, `K₁ ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentWitness {
    pub k0: DiffOp,
    pub k1: DiffOp,
    pub r: ExpPolyOp,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem3Verdict {
    pub has_time_dependent: bool,
    pub nilpotent: bool,
    pub ker_m: usize,
    pub ker_m2: usize,
    pub eigen_witnesses: Vec<EigenWitness>,
    pub nilpotent_witnesses: Vec<NilpotentWitness>,
    /// `M` is not nilpotent yet no nonzero eigenvalue is a Gaussian rational.
    pub eigen_witnesses_unavailable: bool,
    pub mastersymmetries: Vec<DiffOp>,
}

/// Scales `coords` so its first nonzero ambient coordinate is 1 and returns
/// the scale factor used.
fn normalizer(analysis: &AdjointAnalysis, coords: &[GaussianRational]) -> GaussianRational {
    analysis
        .lift(coords)
        .into_iter()
        .find(|c| !c.is_zero())
        .expect("nonzero vector")
        .inv()
}

/// Basis of `ker M²` modulo `ker M`; each element `K₀` satisfies
/// `[H,[H,K₀]] = 0` and `[H,K₀] ≠ 0`.
pub fn find_mastersymmetries(analysis: &AdjointAnalysis) -> Result<Vec<DiffOp>, SpectralError> {
    let m = &analysis.matrix;
    let ker1 = m.nullspace();
    let ker2 = m.mul(m).expect("square").nullspace();
    let mut red = RowReducer::new(analysis.dim());
    for v in &ker1 {
        red.push_dense(v);
    }
    let mut out = Vec::new();
    for v in ker2 {
        if !red.push_dense(&v) {
            continue;
        }
        let k0 = analysis.operator(&v).scale(&normalizer(analysis, &v));
        let hk = analysis.h.commutator(&k0)?;
        if hk.is_zero() || !analysis.h.commutator(&hk)?.is_zero() {
            return Err(SpectralError::Verification(k0.to_expr_string()));
        }
        out.push(k0);
    }
    Ok(out)
}

/// Decides whether time-dependent symmetries exist in the analysed space:
/// yes iff `M` is not nilpotent or `ker M² ≠ ker M`.
pub fn theorem3_decide(analysis: &AdjointAnalysis) -> Result<Theorem3Verdict, SpectralError> {
    let m = &analysis.matrix;
    let tower = kernel_tower(m);
    let nilpotent = tower.last().map_or(0, Vec::len) == analysis.dim();
    let ker_m = tower.first().map_or(0, Vec::len);
    let ker_m2 = tower.get(1).map_or(ker_m, Vec::len);

    let mut eigen_witnesses = Vec::new();
    for (lambda, _) in analysis.eigenvalues() {
        if lambda.is_zero() {
            continue;
        }
        for v in m.shift(lambda).nullspace() {
            let k0 = analysis.operator(&v).scale(&normalizer(analysis, &v));
            let expected = k0.scale(&(GaussianRational::i() * lambda.clone()));
            if analysis.h.commutator(&k0)? != expected {
                return Err(SpectralError::Verification(k0.to_expr_string()));
            }
            let r = ExpPolyOp::single(lambda.clone(), k0.clone());
            eigen_witnesses.push(EigenWitness {
                lambda: lambda.clone(),
                k0,
                r,
            });
        }
    }

    let mastersymmetries = find_mastersymmetries(analysis)?;
    let mut nilpotent_witnesses = Vec::new();
    for k0 in &mastersymmetries {
        let k1 = analysis.apply(k0)?;
        let r = assemble(&GaussianRational::zero(), &[k0.clone(), k1.clone()]);
        if !r.symmetry_residual(&analysis.h)?.is_zero() {
            return Err(SpectralError::Verification(r.to_expr_string()));
        }
        nilpotent_witnesses.push(NilpotentWitness {
            k0: k0.clone(),
            k1,
            r,
        });
    }

    Ok(Theorem3Verdict {
        has_time_dependent: !nilpotent || ker_m2 != ker_m,
        nilpotent,
        ker_m,
        ker_m2,
        eigen_witnesses_unavailable: !nilpotent && eigen_witnesses.is_empty(),
        eigen_witnesses,
        nilpotent_witnesses,
        mastersymmetries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determining::SchrodingerSpec;
    use crate::expr_io::parse_poly;
    use crate::scalar::gauss;
    use crate::spectral::analyze;

    fn with_v(v: &str) -> SchrodingerSpec {
        SchrodingerSpec::with_potential(1, parse_poly(v, 1).unwrap()).unwrap()
    }

    #[test]
    fn free_particle_case_two() {
        let v = theorem3_decide(&analyze(&SchrodingerSpec::free(1), 1, 2).unwrap()).unwrap();
        assert!(v.has_time_dependent);
        assert!(v.nilpotent);
        assert_eq!(v.nilpotent_witnesses.len(), 1);
        let w = &v.nilpotent_witnesses[0];
        assert_eq!(w.k0.to_expr_string(), "(x1)");
        assert_eq!(w.k1, DiffOp::momentum(1, 0).scale(&gauss(-1, 0)));
    }

    #[test]
    fn oscillator_case_one() {
        let v = theorem3_decide(&analyze(&with_v("x1^2"), 1, 2).unwrap()).unwrap();
        assert!(v.has_time_dependent);
        assert!(!v.nilpotent);
        let lambdas: Vec<GaussianRational> = v.eigen_witnesses.iter().map(|w| w.lambda.clone()).collect();
        assert_eq!(lambdas, [gauss(0, -1), gauss(0, 1)]);
        assert!(v.mastersymmetries.is_empty());
    }

    #[test]
    fn quartic_has_none() {
        for (q, d) in [(1, 2), (2, 4)] {
            let v = theorem3_decide(&analyze(&with_v("x1^4"), q, d).unwrap()).unwrap();
            assert!(!v.has_time_dependent);
            assert_eq!(v.ker_m, v.ker_m2);
        }
    }

    #[test]
    fn irrational_frequencies() {
        let v = theorem3_decide(&analyze(&with_v("2*x1^2"), 1, 1).unwrap()).unwrap();
        assert!(v.has_time_dependent);
        assert!(v.eigen_witnesses_unavailable);
    }

    #[test]
    fn constant_potential_mastersymmetries() {
        let spec = SchrodingerSpec::with_potential(2, parse_poly("7", 2).unwrap()).unwrap();
        let ms = find_mastersymmetries(&analyze(&spec, 1, 1).unwrap()).unwrap();
        let names: Vec<String> = ms.iter().map(DiffOp::to_expr_string).collect();
        assert!(names.contains(&"(x1)".to_string()));
        assert!(names.contains(&"(x2)".to_string()));
    }
}
