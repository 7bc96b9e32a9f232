use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use symop::determining::{DeterminingSystem, SymmetryBasis};
use symop::enumeration::{CountTable, KillingBasis};
use symop::expr_io::json::{diffop_to_json, exppoly_to_json, scalar_to_json};
use symop::spectral::{AdjointAnalysis, EigenData, Theorem3Verdict};
use symop::{Field, Rational, CONVENTION};

/// Rendered outcome of one command. The JSON object and the text block are
/// built together so both carry the same facts.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub outside_proven_range: bool,
    body: Map<String, Value>,
    text: Vec<String>,
}

impl Report {
    fn new(command: &'static str, n: usize, q: Option<u32>) -> Self {
        let mut body = Map::new();
        body.insert("command".into(), json!(command));
        body.insert("n".into(), json!(n));
        body.insert("q".into(), q.map_or(Value::Null, |q| json!(q)));
        body.insert("convention".into(), json!(CONVENTION));
        Report {
            command,
            outside_proven_range: false,
            body,
            text: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.into(), v);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        let mut body = self.body.clone();
        body.insert("outside_proven_range".into(), json!(self.outside_proven_range));
        Value::Object(body)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub(crate) fn counts(n: usize, q: u32, t: &CountTable) -> Self {
        let mut r = Report::new("count", n, Some(q));
        r.set(
            "counts",
            json!({
                "N_hat": big(&t.n_hat),
                "N_tilde": big(&t.n_tilde),
                "S": t.s.iter().map(big).collect::<Vec<_>>(),
                "K": t.k.iter().map(big).collect::<Vec<_>>(),
            }),
        );
        r.outside_proven_range = t.outside_proven_range;
        r.line(format!("n = {n}, q = {q}"));
        r.line(format!("N_hat   = {}", t.n_hat));
        r.line(format!("N_tilde = {}", t.n_tilde));
        for (j, (s, k)) in t.s.iter().zip(&t.k).enumerate() {
            r.line(format!("j = {j}: S = {s}, K = {k}"));
        }
        r
    }

    pub(crate) fn killing(
        basis: &KillingBasis<Rational>,
        saturated: bool,
        expected_s: Option<BigUint>,
        expected_k: Option<BigUint>,
    ) -> Self {
        let mut r = Report::new("killing", basis.n, None);
        let dim = basis.dim();
        r.set("rank", json!(basis.rank));
        r.set("order", json!(basis.order));
        r.set("dimension", json!(dim));
        r.set("bounds", json!({ "D": basis.max_degree, "M": Value::Null, "saturated": saturated }));
        let elements: Vec<Value> = basis
            .elements
            .iter()
            .map(|e| {
                Value::Array(
                    e.iter()
                        .filter(|(_, p)| !p.is_empty())
                        .map(|(idx, p)| json!({ "index": idx.x(), "coeff": p.to_expr_string() }))
                        .collect(),
                )
            })
            .collect();
        r.set("basis", Value::Array(elements));
        let expected = expected_s.or(expected_k);
        r.set("expected", expected.as_ref().map_or(Value::Null, big));
        r.set(
            "matches",
            expected
                .as_ref()
                .map_or(Value::Null, |e| json!(*e == BigUint::from(dim))),
        );
        r.line(format!(
            "n = {}, rank = {}, order = {}, degree <= {}",
            basis.n, basis.rank, basis.order, basis.max_degree
        ));
        match &expected {
            Some(e) => r.line(format!("dimension = {dim} (closed form {e})")),
            None => r.line(format!("dimension = {dim}")),
        }
        r.line(format!("saturated = {saturated}"));
        for (k, e) in basis.elements.iter().enumerate() {
            let parts: Vec<String> = e
                .iter()
                .filter(|(_, p)| !p.is_empty())
                .map(|(idx, p)| format!("[{}] {}", idx_label(idx.x()), p.to_expr_string()))
                .collect();
            r.line(format!("{}: {}", k + 1, parts.join("; ")));
        }
        r
    }

    pub(crate) fn system(s: &DeterminingSystem) -> Self {
        let mut r = Report::new("determine", s.n, Some(s.q));
        r.set("equations", json!(s.len()));
        r.set("system", serde_json::to_value(s.to_json()).expect("serializable"));
        r.text.extend(s.to_text().lines().map(str::to_string));
        r
    }

    pub(crate) fn solve(b: &SymmetryBasis, saturated: bool) -> Self {
        let mut r = Report::new("solve", b.n, Some(b.q));
        r.set("dimension", json!(b.dim()));
        r.set("bounds", json!({ "D": b.deg_r, "M": b.deg_t, "saturated": saturated }));
        r.set(
            "basis",
            Value::Array(
                b.elements
                    .iter()
                    .map(|q| json!({ "expr": q.to_expr_string(), "operator": diffop_to_json(q) }))
                    .collect(),
            ),
        );
        r.line(format!(
            "n = {}, q = {}, D = {}, M = {}",
            b.n, b.q, b.deg_r, b.deg_t
        ));
        r.line(format!("dimension = {}", b.dim()));
        r.line(format!("saturated = {saturated}"));
        for (k, q) in b.elements.iter().enumerate() {
            r.line(format!("{}: {}", k + 1, q.to_expr_string()));
        }
        r
    }

    pub(crate) fn spectral(
        a: &AdjointAnalysis,
        eigen: &[EigenData],
        v: &Theorem3Verdict,
        saturated: bool,
    ) -> Self {
        let s = &a.space;
        let mut r = Report::new("spectral", s.n, Some(s.q));
        let syms: Vec<_> = eigen
            .iter()
            .flat_map(|e| e.chains.iter().flat_map(|c| c.suffix_symmetries()))
            .collect();
        r.set("dimension", json!(syms.len()));
        r.set("bounds", json!({ "D": s.max_degree, "M": Value::Null, "saturated": saturated }));
        r.set(
            "basis",
            Value::Array(
                syms.iter()
                    .map(|q| json!({ "expr": q.to_expr_string(), "operator": exppoly_to_json(q) }))
                    .collect(),
            ),
        );
        let eigen_json: Vec<Value> = eigen
            .iter()
            .map(|e| {
                json!({
                    "lambda": scalar_to_json(&e.lambda),
                    "multiplicity": e.multiplicity,
                    "kernel_dims": e.kernel_dims,
                    "chains": e.chains.iter().map(|c| json!({
                        "length": c.len(),
                        "ops": c.ops.iter().map(|o| o.to_expr_string()).collect::<Vec<_>>(),
                        "symmetry": c.r.to_expr_string(),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        r.set(
            "analysis",
            json!({
                "space_dim": s.dim(),
                "subspace_dim": a.dim(),
                "char_poly": a.char_poly.to_expr_string(),
                "residual": a.roots.residual.to_expr_string(),
                "eigenvalues": eigen_json,
            }),
        );
        r.set(
            "verdict",
            json!({
                "has_time_dependent": v.has_time_dependent,
                "nilpotent": v.nilpotent,
                "ker_m": v.ker_m,
                "ker_m2": v.ker_m2,
                "eigen_witnesses_unavailable": v.eigen_witnesses_unavailable,
                "eigen_witnesses": v.eigen_witnesses.iter().map(|w| json!({
                    "lambda": scalar_to_json(&w.lambda),
                    "k0": w.k0.to_expr_string(),
                    "symmetry": w.r.to_expr_string(),
                })).collect::<Vec<_>>(),
                "nilpotent_witnesses": v.nilpotent_witnesses.iter().map(|w| json!({
                    "k0": w.k0.to_expr_string(),
                    "k1": w.k1.to_expr_string(),
                    "symmetry": w.r.to_expr_string(),
                })).collect::<Vec<_>>(),
                "mastersymmetries": v.mastersymmetries.iter().map(|m| m.to_expr_string()).collect::<Vec<_>>(),
            }),
        );

        r.line(format!("n = {}, q = {}, D = {}", s.n, s.q, s.max_degree));
        r.line(format!(
            "ambient dimension = {}, invariant subspace = {}",
            s.dim(),
            a.dim()
        ));
        r.line(format!("characteristic polynomial = {}", a.char_poly.to_expr_string()));
        if a.roots.residual.degree() > 0 {
            r.line(format!(
                "no Gaussian-rational roots: {}",
                a.roots.residual.to_expr_string()
            ));
        }
        for e in eigen {
            r.line(format!(
                "lambda = {} (multiplicity {}, kernels {:?})",
                e.lambda.to_expr_string(),
                e.multiplicity,
                e.kernel_dims
            ));
        }
        r.line(format!("symmetries = {}, saturated = {saturated}", syms.len()));
        for (k, q) in syms.iter().enumerate() {
            r.line(format!("{}: {}", k + 1, q.to_expr_string()));
        }
        r.line(format!("time-dependent symmetries = {}", v.has_time_dependent));
        for w in &v.eigen_witnesses {
            r.line(format!("  eigen witness: {}", w.r.to_expr_string()));
        }
        for w in &v.nilpotent_witnesses {
            r.line(format!("  nilpotent witness: {}", w.r.to_expr_string()));
        }
        if v.eigen_witnesses_unavailable {
            r.line("  nonzero eigenvalues are not Gaussian rationals");
        }
        r
    }
}

fn idx_label(x: &[u32]) -> String {
    x.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Counts that fit in `u64` stay numbers; larger ones become decimal strings.
fn big(v: &BigUint) -> Value {
    v.to_u64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_counts_switch_to_strings() {
        assert_eq!(big(&BigUint::from(50u32)), json!(50));
        let huge = BigUint::from(u64::MAX) + 1u32;
        assert_eq!(big(&huge), json!("18446744073709551616"));
    }

    #[test]
    fn json_carries_range_flag() {
        let mut r = Report::new("count", 5, Some(1));
        r.outside_proven_range = true;
        let v = r.to_json();
        assert_eq!(v["outside_proven_range"], true);
        assert_eq!(v["convention"], CONVENTION);
    }
}
