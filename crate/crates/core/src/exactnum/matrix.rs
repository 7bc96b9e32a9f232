use std::collections::BTreeMap;

use crate::scalar::Field;

use super::unipoly::UniPoly;
use super::ExactError;

/// Sparse row: column index → nonzero entry.
pub type SparseRow<S> = BTreeMap<usize, S>;

/// Incremental Gaussian elimination over a field.
///
/// Rows are streamed in with [`RowReducer::push_row`]; each stored pivot row is
/// normalized to leading coefficient 1 and has a distinct leading column.
#[derive(Clone, Debug)]
pub struct RowReducer<S> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<S>>,
}

impl<S: Field> RowReducer<S> {
    pub fn new(ncols: usize) -> Self {
        RowReducer {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Remainder of `row` after elimination against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow<S>) -> SparseRow<S> {
        row.retain(|_, v| !v.is_zero());
        let mut start = 0usize;
        loop {
            let next = row
                .range(start..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = next else { break };
            for (k, pv) in &self.pivots[&col] {
                let entry = row.entry(*k).or_insert_with(S::zero);
                *entry -= factor.clone() * pv.clone();
                if entry.is_zero() {
                    row.remove(k);
                }
            }
            start = col + 1;
        }
        row
    }

    /// Adds a row; returns `true` when it raised the rank.
    pub fn push_row(&mut self, row: SparseRow<S>) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let rem = self.reduce(row);
        let Some((&lead, lead_val)) = rem.iter().next() else {
            return false;
        };
        let inv = lead_val.inv();
        let normalized = rem.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    pub fn push_dense(&mut self, row: &[S]) -> bool {
        self.push_row(dense_to_sparse(row))
    }

    /// Fully reduced row echelon form, rows ordered by pivot column.
    pub fn into_rref(mut self) -> Vec<(usize, SparseRow<S>)> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let prow = self.pivots[&c].clone();
            for (&other, row) in self.pivots.range_mut(..c) {
                debug_assert!(other < c);
                if let Some(f) = row.get(&c).cloned() {
                    for (k, pv) in &prow {
                        let entry = row.entry(*k).or_insert_with(S::zero);
                        *entry -= f.clone() * pv.clone();
                        if entry.is_zero() {
                            row.remove(k);
                        }
                    }
                }
            }
        }
        self.pivots.into_iter().collect()
    }

    /// Basis of the solution space of `row · v = 0` over all pushed rows.
    ///
    /// One vector per free column (ascending), with a 1 in that column and 0
    /// in every other free column.
    pub fn nullspace(self) -> Vec<Vec<S>> {
        let ncols = self.ncols;
        let rref = self.into_rref();
        let pivot_cols: Vec<usize> = rref.iter().map(|(c, _)| *c).collect();
        let mut is_pivot = vec![false; ncols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); ncols];
            v[free] = S::one();
            for (pc, row) in &rref {
                if let Some(val) = row.get(&free) {
                    v[*pc] = -val.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

pub fn dense_to_sparse<S: Field>(row: &[S]) -> SparseRow<S> {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// A subspace of `S^ncols` held as reduced-echelon basis rows.
///
/// Coordinates of a member vector are read off at the pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanBasis<S> {
    ncols: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Field> SpanBasis<S> {
    pub fn new(ncols: usize, vectors: impl IntoIterator<Item = Vec<S>>) -> Self {
        let mut red = RowReducer::new(ncols);
        for v in vectors {
            assert_eq!(v.len(), ncols);
            red.push_dense(&v);
        }
        let rows = red
            .into_rref()
            .into_iter()
            .map(|(c, row)| {
                let mut dense = vec![S::zero(); ncols];
                for (k, v) in row {
                    dense[k] = v;
                }
                (c, dense)
            })
            .collect();
        SpanBasis { ncols, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<S>> {
        self.rows.iter().map(|(_, v)| v)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Coordinates of `w` in this basis, or `None` when `w` lies outside.
    pub fn coordinates(&self, w: &[S]) -> Option<Vec<S>> {
        assert_eq!(w.len(), self.ncols);
        let coords: Vec<S> = self.rows.iter().map(|(c, _)| w[*c].clone()).collect();
        let mut recon = vec![S::zero(); self.ncols];
        for (coef, (_, row)) in coords.iter().zip(&self.rows) {
            if coef.is_zero() {
                continue;
            }
            for (r, v) in recon.iter_mut().zip(row) {
                if !v.is_zero() {
                    *r += coef.clone() * v.clone();
                }
            }
        }
        (recon.as_slice() == w).then_some(coords)
    }

    pub fn contains(&self, w: &[S]) -> bool {
        self.coordinates(w).is_some()
    }

    pub fn contains_span(&self, other: &SpanBasis<S>) -> bool {
        other.vectors().all(|v| self.contains(v))
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        DenseMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// `self − λ·I`.
    pub fn shift(&self, lambda: &S) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i).clone() - lambda.clone();
            m.set(i, i, v);
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    fn reducer(&self) -> RowReducer<S> {
        let mut red = RowReducer::new(self.cols);
        for i in 0..self.rows {
            red.push_dense(self.row(i));
        }
        red
    }

    pub fn rank(&self) -> usize {
        self.reducer().rank()
    }

    /// Exact basis of `ker M` in reduced echelon normalization.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        self.reducer().nullspace()
    }

    /// `det(sI − M)`, via reduction to upper Hessenberg form.
    pub fn char_poly(&self) -> Result<UniPoly<S>, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                h.swap_cols(p, j + 1);
            }
            let pivot_inv = h.get(j + 1, j).inv();
            for i in j + 2..n {
                let f = h.get(i, j).clone() * pivot_inv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = h.get(i, k).clone() - f.clone() * h.get(j + 1, k).clone();
                    h.set(i, k, v);
                }
                for k in 0..n {
                    let v = h.get(k, j + 1).clone() + f.clone() * h.get(k, i).clone();
                    h.set(k, j + 1, v);
                }
            }
        }
        // p_m = (s − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{k=i+1..m} h_{k,k−1}) p_{i−1}, 1-based.
        let mut polys: Vec<UniPoly<S>> = vec![UniPoly::one()];
        for m in 1..=n {
            let mut pm = UniPoly::linear(h.get(m - 1, m - 1)).mul(&polys[m - 1]);
            let mut sub_prod = S::one();
            for i in (1..m).rev() {
                sub_prod *= h.get(i, i - 1).clone();
                if sub_prod.is_zero() {
                    break;
                }
                let c = h.get(i - 1, m - 1).clone() * sub_prod.clone();
                if !c.is_zero() {
                    pm = pm.sub(&polys[i - 1].scale(&c));
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().expect("nonempty"))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly<S>) -> Result<Self, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&Self::identity(self.rows).scale(c));
        }
        Ok(acc)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for k in 0..self.rows {
            self.data.swap(k * self.cols + a, k * self.cols + b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, rat, GaussianRational, Rational};

    type M = DenseMatrix<GaussianRational>;

    fn m(rows: &[&[i64]]) -> M {
        M::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| gauss(v, 0)).collect())
                .collect(),
        )
    }

    #[test]
    fn nullspace_examples() {
        assert!(M::identity(3).nullspace().is_empty());
        assert_eq!(M::zeros(2, 3).nullspace().len(), 3);
        let ns = m(&[&[1, 1], &[2, 2]]).nullspace();
        assert_eq!(ns, vec![vec![gauss(-1, 0), gauss(1, 0)]]);
    }

    #[test]
    fn char_poly_examples() {
        let z = M::zeros(2, 2).char_poly().unwrap();
        assert_eq!(z.to_expr_string(), "s^2");
        let rot = m(&[&[0, 1], &[-1, 0]]).char_poly().unwrap();
        assert_eq!(rot.to_expr_string(), "s^2 + 1");
        let c = M::from_rows(vec![vec![gauss(3, -2)]]).char_poly().unwrap();
        assert_eq!(c, UniPoly::linear(&gauss(3, -2)));
        assert!(M::zeros(2, 3).char_poly().is_err());
    }

    #[test]
    fn char_poly_needs_row_swap() {
        // Companion matrix of s^3 − 2s + 5 has a zero subdiagonal pivot after permutation.
        let a = DenseMatrix::<Rational>::from_rows(vec![
            vec![rat(0, 1), rat(0, 1), rat(-5, 1)],
            vec![rat(1, 1), rat(0, 1), rat(2, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
        ]);
        let p = a.char_poly().unwrap();
        assert_eq!(p.to_expr_string(), "s^3 - 2*s + 5");
        assert!(a.eval_poly(&p).unwrap().is_zero());
    }

    #[test]
    fn span_coordinates() {
        let span = SpanBasis::new(3, vec![
            vec![gauss(1, 0), gauss(0, 1), gauss(0, 0)],
            vec![gauss(0, 0), gauss(1, 0), gauss(1, 0)],
        ]);
        assert_eq!(span.dim(), 2);
        let w = vec![gauss(2, 0), gauss(1, 2), gauss(1, 0)];
        let c = span.coordinates(&w).unwrap();
        assert_eq!(c, vec![gauss(2, 0), gauss(1, 2)]);
        assert!(!span.contains(&[gauss(0, 0), gauss(0, 0), gauss(1, 0)]));
    }
}
