#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use symop::diffop::DiffOperator;
use symop::exactnum::{MPoly, Monomial};
use symop::scalar::{rat, GaussianRational};
use symop::{DiffOp, Poly, SymTensorSet};

pub fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

pub fn monomial(n: usize, max_deg: u32, with_t: bool) -> impl Strategy<Value = Monomial> {
    let max_t: u32 = if with_t { 2 } else { 0 };
    (vec(0..=max_deg, n), 0..=max_t).prop_map(move |(mut x, t)| {
        let mut total: u32 = 0;
        for e in x.iter_mut() {
            *e = (*e).min(max_deg - total);
            total += *e;
        }
        Monomial::new(x, t)
    })
}

pub fn poly(n: usize, max_deg: u32, max_terms: usize, with_t: bool) -> impl Strategy<Value = Poly> {
    vec((monomial(n, max_deg, with_t), scalar()), 0..=max_terms)
        .prop_map(move |terms| MPoly::from_terms(n, terms))
}

/// Operators without a time derivative.
pub fn operator(n: usize, order: u32, deg: u32, max_terms: usize) -> impl Strategy<Value = DiffOp> {
    vec((monomial(n, order, false), poly(n, deg, 2, false)), 0..=max_terms)
        .prop_map(move |terms| DiffOperator::from_terms(n, terms))
}

pub fn tensor_set(n: usize, q: u32, deg: u32) -> impl Strategy<Value = SymTensorSet> {
    let keys: Vec<Monomial> = (0..=q).flat_map(|j| Monomial::of_x_degree(n, j)).collect();
    let len = keys.len();
    vec(poly(n, deg, 2, false), len).prop_map(move |entries| {
        let mut f = SymTensorSet::zero(n, q);
        for (k, e) in keys.iter().zip(entries) {
            f.set(k.clone(), e);
        }
        f
    })
}
