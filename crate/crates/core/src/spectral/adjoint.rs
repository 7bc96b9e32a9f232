use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactnum::{gaussian_roots, RootSet, RowReducer, SpanBasis, SparseRow};
use crate::scalar::GaussianRational;
use crate::{CharPoly, DiffOp, Matrix};

use super::{OperatorSpace, SpectralError};

/// `M = −i·ad_H` restricted to its largest invariant subspace `U ⊆ W`.
#[derive(Clone, Debug)]
pub struct AdjointAnalysis {
    pub h: DiffOp,
    pub space: OperatorSpace,
    /// Basis of `U` in coordinates of `space`.
    pub subspace: SpanBasis<GaussianRational>,
    /// Column `j` holds the `U`-coordinates of `M u_j`.
    pub matrix: Matrix,
    pub char_poly: CharPoly,
    pub roots: RootSet,
    /// Number of refinement steps until `U` stopped shrinking.
    pub iterations: usize,
}

/// `−i[H, C]`.
pub fn adjoint_apply(h: &DiffOp, c: &DiffOp) -> Result<DiffOp, SpectralError> {
    Ok(h.commutator(c)?.scale(&(-GaussianRational::i())))
}

impl AdjointAnalysis {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn basis_operators(&self) -> Vec<DiffOp> {
        self.subspace
            .vectors()
            .map(|v| self.space.to_operator(v))
            .collect()
    }

    /// Operator with the given `U`-coordinates.
    pub fn operator(&self, coords: &[GaussianRational]) -> DiffOp {
        self.space.to_operator(&self.lift(coords))
    }

    /// `U`-coordinates to coordinates in the ambient space `W`.
    pub fn lift(&self, coords: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![GaussianRational::zero(); self.space.dim()];
        for (c, v) in coords.iter().zip(self.subspace.vectors()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o += c.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn apply(&self, c: &DiffOp) -> Result<DiffOp, SpectralError> {
        adjoint_apply(&self.h, c)
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &(GaussianRational, usize)> {
        self.roots.roots.iter()
    }
}

/// Largest subspace of `space` mapped into itself by `C ↦ −i[H, C]`.
///
/// Commutators are evaluated in the ambient space of order `q + 1` and
/// coefficient degree `D + deg(H)`; leaving it is reported as an error.
pub fn invariant_subspace(h: &DiffOp, space: OperatorSpace) -> Result<AdjointAnalysis, SpectralError> {
    if !h.is_time_independent() {
        return Err(SpectralError::TimeDependentHamiltonian);
    }
    let ambient = OperatorSpace::new(space.n, space.q + 1, space.max_degree + h.coeff_x_degree());
    let embed: Vec<usize> = (0..space.dim())
        .map(|i| {
            let (d, m) = space.key(i);
            ambient.index_of(d, m).expect("space embeds in its ambient")
        })
        .collect();
    let images: Vec<SparseRow<GaussianRational>> = (0..space.dim())
        .map(|i| {
            let img = adjoint_apply(h, &space.element(i))?;
            ambient
                .sparse_coordinates(&img)
                .ok_or(SpectralError::AmbientOverflow)
        })
        .collect::<Result<_, _>>()?;

    let mut current: Vec<Vec<GaussianRational>> = (0..space.dim())
        .map(|i| {
            let mut v = vec![GaussianRational::zero(); space.dim()];
            v[i] = GaussianRational::one();
            v
        })
        .collect();
    let mut iterations = 0;
    loop {
        let k = current.len();
        // Unknowns (c, d): Σ c_j M u_j = Σ d_l u_l in the ambient space.
        let mut rows: BTreeMap<usize, SparseRow<GaussianRational>> = BTreeMap::new();
        for (j, u) in current.iter().enumerate() {
            for (i, ui) in u.iter().enumerate() {
                if ui.is_zero() {
                    continue;
                }
                for (r, v) in &images[i] {
                    let e = rows.entry(*r).or_default().entry(j).or_insert_with(GaussianRational::zero);
                    *e += ui.clone() * v.clone();
                }
                let e = rows
                    .entry(embed[i])
                    .or_default()
                    .entry(k + j)
                    .or_insert_with(GaussianRational::zero);
                *e -= ui.clone();
            }
        }
        let mut red = RowReducer::new(2 * k);
        for row in rows.into_values() {
            red.push_row(row);
        }
        let next: Vec<Vec<GaussianRational>> = red
            .nullspace()
            .into_iter()
            .map(|sol| combine(&current, &sol[..k], space.dim()))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let basis = SpanBasis::new(space.dim(), next);
        iterations += 1;
        let shrunk = basis.dim() < k;
        current = basis.vectors().cloned().collect();
        if !shrunk {
            break;
        }
    }
    let subspace = SpanBasis::new(space.dim(), current);

    let dim = subspace.dim();
    let unembed: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut columns = Vec::with_capacity(dim);
    for u in subspace.vectors() {
        let mut image = SparseRow::new();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (r, v) in &images[i] {
                *image.entry(*r).or_insert_with(GaussianRational::zero) += ui.clone() * v.clone();
            }
        }
        let mut w = vec![GaussianRational::zero(); space.dim()];
        for (r, v) in image {
            if v.is_zero() {
                continue;
            }
            let pos = unembed.get(&r).ok_or_else(leaves_subspace)?;
            w[*pos] = v;
        }
        let coords = subspace.coordinates(&w).ok_or_else(leaves_subspace)?;
        columns.push(coords);
    }
    let matrix = Matrix::from_columns(dim, &columns);
    let char_poly = matrix.char_poly().expect("square");
    let roots = gaussian_roots(&char_poly);
    Ok(AdjointAnalysis {
        h: h.clone(),
        space,
        subspace,
        matrix,
        char_poly,
        roots,
        iterations,
    })
}

fn leaves_subspace() -> SpectralError {
    SpectralError::Verification("image leaves the invariant subspace".into())
}

fn combine(vectors: &[Vec<GaussianRational>], coeffs: &[GaussianRational], len: usize) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c.clone() * x.clone();
            }
        }
    }
    out
}
