//! JSON encoding of exact scalars, polynomials and operators.
//!
//! Rationals travel as `"num/den"` strings so nothing is rounded.

use serde::{Deserialize, Serialize};

use crate::exactnum::{MPoly, Monomial};
use crate::scalar::{parse_rational, ComplexField, Rational};
use crate::diffop::{DiffOperator, ExpPolyOperator};

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonScalar {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPolyTerm {
    pub exps: Vec<u32>,
    pub t_exp: u32,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonOpTerm {
    pub deriv: Vec<u32>,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub dt: u32,
    pub coeff: Vec<JsonPolyTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBranch {
    pub lambda: JsonScalar,
    pub terms: Vec<JsonOpTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonOperator {
    pub branches: Vec<JsonBranch>,
}

fn is_zero_u32(v: &u32) -> bool {
    *v == 0
}

pub fn rational_to_json(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_from_json(s: &str) -> Result<Rational, ParseError> {
    parse_rational(s).ok_or_else(|| ParseError::new(0, format!("malformed rational '{s}'")))
}

pub fn scalar_to_json<S: ComplexField>(z: &S) -> JsonScalar {
    JsonScalar {
        re: rational_to_json(&z.re_part()),
        im: rational_to_json(&z.im_part()),
    }
}

pub fn scalar_from_json<S: ComplexField>(j: &JsonScalar) -> Result<S, ParseError> {
    Ok(S::from_parts(rational_from_json(&j.re)?, rational_from_json(&j.im)?))
}

/// Terms in descending monomial order, matching the text form.
pub fn poly_to_json<S: ComplexField>(p: &MPoly<S>) -> Vec<JsonPolyTerm> {
    p.terms()
        .rev()
        .map(|(m, c)| JsonPolyTerm {
            exps: m.x().to_vec(),
            t_exp: m.t(),
            re: rational_to_json(&c.re_part()),
            im: rational_to_json(&c.im_part()),
        })
        .collect()
}

pub fn poly_from_json<S: ComplexField>(n: usize, terms: &[JsonPolyTerm]) -> Result<MPoly<S>, ParseError> {
    let mut out = MPoly::zero(n);
    for t in terms {
        if t.exps.len() != n {
            return Err(ParseError::new(0, format!("monomial has {} exponents, expected {n}", t.exps.len())));
        }
        let c = S::from_parts(rational_from_json(&t.re)?, rational_from_json(&t.im)?);
        out.add_term(Monomial::new(t.exps.clone(), t.t_exp), c);
    }
    Ok(out)
}

pub fn diffop_terms_to_json<S: ComplexField>(op: &DiffOperator<S>) -> Vec<JsonOpTerm> {
    op.terms()
        .rev()
        .map(|(d, c)| JsonOpTerm {
            deriv: d.x().to_vec(),
            dt: d.t(),
            coeff: poly_to_json(c),
        })
        .collect()
}

pub fn diffop_from_json_terms<S: ComplexField>(
    n: usize,
    terms: &[JsonOpTerm],
) -> Result<DiffOperator<S>, ParseError> {
    let mut out = DiffOperator::zero(n);
    for t in terms {
        if t.deriv.len() != n {
            return Err(ParseError::new(0, format!("derivative index has {} entries, expected {n}", t.deriv.len())));
        }
        out.add_term(Monomial::new(t.deriv.clone(), t.dt), poly_from_json(n, &t.coeff)?);
    }
    Ok(out)
}

pub fn diffop_to_json<S: ComplexField>(op: &DiffOperator<S>) -> JsonOperator {
    exppoly_to_json(&ExpPolyOperator::polynomial(op.clone()))
}

pub fn exppoly_to_json<S: ComplexField>(r: &ExpPolyOperator<S>) -> JsonOperator {
    JsonOperator {
        branches: r
            .branches()
            .iter()
            .map(|(l, op)| JsonBranch {
                lambda: scalar_to_json(l),
                terms: diffop_terms_to_json(op),
            })
            .collect(),
    }
}

pub fn exppoly_from_json<S: ComplexField>(n: usize, j: &JsonOperator) -> Result<ExpPolyOperator<S>, ParseError> {
    let mut out = ExpPolyOperator::zero(n);
    for b in &j.branches {
        out.add_branch(scalar_from_json(&b.lambda)?, diffop_from_json_terms(n, &b.terms)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, GaussianRational};

    #[test]
    fn operator_roundtrip() {
        let n = 2;
        let c = MPoly::<GaussianRational>::var(n, 1).scale(&gauss(3, -1))
            + MPoly::t_var(n).scale(&GaussianRational::new(crate::scalar::rat(1, 3), crate::scalar::rat(0, 1)));
        let op = DiffOperator::from_term(Monomial::new(vec![1, 1], 0), c)
            .add(&DiffOperator::partial_t(n))
            .unwrap();
        let r = ExpPolyOperator::single(gauss(0, 2), op);
        let j = exppoly_to_json(&r);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"1/3\""));
        let back: JsonOperator = serde_json::from_str(&text).unwrap();
        assert_eq!(exppoly_from_json::<GaussianRational>(n, &back).unwrap(), r);
    }

    #[test]
    fn malformed_rational() {
        let j = JsonScalar { re: "1/0".into(), im: "0/1".into() };
        assert!(scalar_from_json::<GaussianRational>(&j).is_err());
    }
}
