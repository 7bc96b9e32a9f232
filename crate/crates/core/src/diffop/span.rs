use std::collections::BTreeMap;

use crate::exactnum::{Monomial, SpanBasis};
use crate::scalar::Field;

use super::DiffOperator;

/// Flattens operators into coordinate vectors over the `(derivative, monomial)`
/// pairs that occur in any of them.
fn flatten<S: Field>(groups: &[&[DiffOperator<S>]]) -> (usize, Vec<Vec<Vec<S>>>) {
    let mut index: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
    for ops in groups {
        for op in *ops {
            for (d, c) in op.terms() {
                for (m, _) in c.terms() {
                    index.entry((d.clone(), m.clone())).or_insert(0);
                }
            }
        }
    }
    for (k, slot) in index.values_mut().enumerate() {
        *slot = k;
    }
    let ncols = index.len();
    let vectors = groups
        .iter()
        .map(|ops| {
            ops.iter()
                .map(|op| {
                    let mut v = vec![S::zero(); ncols];
                    for (d, c) in op.terms() {
                        for (m, s) in c.terms() {
                            v[index[&(d.clone(), m.clone())]] = s.clone();
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    (ncols, vectors)
}

/// Dimension of the linear span of `ops`.
pub fn span_dim<S: Field>(ops: &[DiffOperator<S>]) -> usize {
    let (ncols, mut vs) = flatten(&[ops]);
    SpanBasis::new(ncols, vs.remove(0)).dim()
}

/// Whether every operator of `inner` lies in the span of `outer`.
pub fn span_contains<S: Field>(outer: &[DiffOperator<S>], inner: &[DiffOperator<S>]) -> bool {
    let (ncols, mut vs) = flatten(&[outer, inner]);
    let inner_vs = vs.pop().unwrap_or_default();
    let basis = SpanBasis::new(ncols, vs.pop().unwrap_or_default());
    inner_vs.iter().all(|v| basis.contains(v))
}

pub fn spans_equal<S: Field>(a: &[DiffOperator<S>], b: &[DiffOperator<S>]) -> bool {
    span_contains(a, b) && span_contains(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::MPoly;
    use crate::scalar::Rational;

    type Op = DiffOperator<Rational>;

    #[test]
    fn spans_of_shuffled_combinations() {
        let x = Op::multiplication(MPoly::var(1, 0));
        let d = Op::partial(1, 0);
        let a = vec![x.clone(), d.clone()];
        let b = vec![x.add(&d).unwrap(), x.sub(&d).unwrap()];
        assert!(spans_equal(&a, &b));
        assert_eq!(span_dim(&b), 2);
        assert!(!span_contains(&[x], &[d]));
    }
}
