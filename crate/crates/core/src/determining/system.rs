use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactnum::Monomial;
use crate::expr_io::json::{poly_to_json, JsonPolyTerm};
use crate::scalar::{Field, GaussianRational};
use crate::{DiffOp, Poly};

use super::SchrodingerSpec;

/// `Σ c · ∂^β b_α`, keyed by `(α, β)`; `β` may include `t`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinearDiffExpr {
    atoms: BTreeMap<(Monomial, Monomial), Poly>,
}

impl LinearDiffExpr {
    pub fn atoms(&self) -> impl DoubleEndedIterator<Item = (&(Monomial, Monomial), &Poly)> {
        self.atoms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn add_atom(&mut self, unknown: Monomial, deriv: Monomial, coeff: Poly) {
        let key = (unknown, deriv);
        match self.atoms.get_mut(&key) {
            Some(c) => {
                c.add_assign_ref(&coeff);
                if c.is_empty() {
                    self.atoms.remove(&key);
                }
            }
            None if !coeff.is_empty() => {
                self.atoms.insert(key, coeff);
            }
            None => {}
        }
    }

    /// Substitutes concrete coefficient functions `b_α`.
    pub fn evaluate(&self, n: usize, b: &BTreeMap<Monomial, Poly>) -> Poly {
        let mut out = Poly::zero(n);
        for ((alpha, beta), c) in &self.atoms {
            if let Some(ba) = b.get(alpha) {
                out.add_assign_ref(&(c * &ba.diff(beta)));
            }
        }
        out
    }

    pub fn to_expr_string(&self) -> String {
        if self.atoms.is_empty() {
            return "0".to_string();
        }
        self.atoms
            .iter()
            .rev()
            .map(|((alpha, beta), c)| format!("({})*{}", c.to_expr_string(), atom_name(alpha, beta)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `b[1,0]_x1^2t` for `∂1²∂t b_{(1,0)}`.
fn atom_name(alpha: &Monomial, beta: &Monomial) -> String {
    let idx: Vec<String> = alpha.x().iter().map(u32::to_string).collect();
    let mut name = format!("b[{}]", idx.join(","));
    let mut factors = Vec::new();
    beta.write_factors(&mut factors, "x", "t");
    if !factors.is_empty() {
        name.push('_');
        name.push_str(&factors.concat());
    }
    name
}

/// Coefficients of `[L, Q]` for `Q = Σ_{|α|≤q} b_α ∂^α`, one equation per
/// output derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterminingSystem {
    pub n: usize,
    pub q: u32,
    equations: BTreeMap<Monomial, LinearDiffExpr>,
}

impl DeterminingSystem {
    /// Equations, highest output derivative first.
    pub fn equations(&self) -> impl Iterator<Item = (&Monomial, &LinearDiffExpr)> {
        self.equations.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equation(&self, deriv: &Monomial) -> Option<&LinearDiffExpr> {
        self.equations.get(deriv)
    }

    pub fn unknowns(&self) -> Vec<Monomial> {
        (0..=self.q)
            .flat_map(|j| Monomial::of_x_degree(self.n, j))
            .collect()
    }

    /// `[L, Q]` for the operator assembled from `b`.
    pub fn evaluate(&self, b: &BTreeMap<Monomial, Poly>) -> DiffOp {
        DiffOp::from_terms(
            self.n,
            self.equations
                .iter()
                .map(|(d, e)| (d.clone(), e.evaluate(self.n, b))),
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (d, e) in self.equations() {
            let mut factors = Vec::new();
            d.write_factors(&mut factors, "d", "dt");
            let label = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            out.push_str(&format!("[{label}] {} = 0\n", e.to_expr_string()));
        }
        out
    }

    pub fn to_json(&self) -> JsonSystem {
        JsonSystem {
            n: self.n,
            q: self.q,
            equations: self
                .equations()
                .map(|(d, e)| JsonEquation {
                    deriv: d.x().to_vec(),
                    dt: d.t(),
                    atoms: e
                        .atoms()
                        .rev()
                        .map(|((alpha, beta), c)| JsonAtom {
                            unknown: alpha.x().to_vec(),
                            deriv: beta.x().to_vec(),
                            dt: beta.t(),
                            coeff: poly_to_json(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAtom {
    pub unknown: Vec<u32>,
    pub deriv: Vec<u32>,
    pub dt: u32,
    pub coeff: Vec<JsonPolyTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEquation {
    pub deriv: Vec<u32>,
    pub dt: u32,
    pub atoms: Vec<JsonAtom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSystem {
    pub n: usize,
    pub q: u32,
    pub equations: Vec<JsonEquation>,
}

/// Expands `[L, Q] = L∘Q − Q∘L` with symbolic `b_α` by the Leibniz rule.
pub fn generate_determining_system(spec: &SchrodingerSpec, q: u32) -> DeterminingSystem {
    let n = spec.n;
    let l = spec.build_l();
    let mut equations: BTreeMap<Monomial, LinearDiffExpr> = BTreeMap::new();
    let unknowns: Vec<Monomial> = (0..=q).flat_map(|j| Monomial::of_x_degree(n, j)).collect();
    for (gamma, lg) in l.terms() {
        for alpha in &unknowns {
            // L∘Q: l_γ ∂^γ ∘ b_α ∂^α = Σ_{δ≤γ} C(γ,δ) l_γ (∂^δ b_α) ∂^{γ−δ+α}
            for delta in gamma.divisors() {
                let w = GaussianRational::from_i64(gamma.binomial(&delta) as i64);
                equations
                    .entry(gamma.sub(&delta).mul(alpha))
                    .or_default()
                    .add_atom(alpha.clone(), delta.clone(), lg.scale(&w));
            }
            // Q∘L: b_α ∂^α ∘ l_γ ∂^γ = Σ_{δ≤α} C(α,δ) b_α (∂^δ l_γ) ∂^{α−δ+γ}
            for delta in alpha.divisors() {
                let dl = lg.diff(&delta);
                if dl.is_empty() {
                    continue;
                }
                let w = GaussianRational::from_i64(-(alpha.binomial(&delta) as i64));
                equations
                    .entry(alpha.sub(&delta).mul(gamma))
                    .or_default()
                    .add_atom(alpha.clone(), Monomial::one(n), dl.scale(&w));
            }
        }
    }
    equations.retain(|_, e| !e.is_empty());
    DeterminingSystem { n, q, equations }
}
