use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_linalg::{
    rank_mod2_paired, rank_rational_paired, smith_normal_form_paired, PivotPairs, SparseIntMatrix,
};
use crate::graded::{Coeff, FgAbelianGroup, GradedHomology};
use crate::simplicial::{SimplexTable, SimplicialComplex};

/// Simplicial chain complex with integer coefficients.
///
/// Simplices are oriented by increasing vertex index; the `i`-th face of a
/// simplex enters its boundary with sign `(−1)^i`.
#[derive(Debug, Clone)]
pub struct ChainComplexZ {
    bases: Vec<SimplexTable>,
    /// `boundaries[k]` is `∂_k: C_k → C_{k−1}`; entry 0 is the zero map to
    /// the empty group.
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexZ {
    pub fn new(c: &SimplicialComplex) -> Self {
        let bases = c.faces();
        let mut boundaries = Vec::with_capacity(bases.len());
        if let Some(b0) = bases.first() {
            boundaries.push(SparseIntMatrix::zero(0, b0.len()));
        }
        for k in 1..bases.len() {
            boundaries.push(boundary_matrix(&bases[k], &bases[k - 1]));
        }
        Self { bases, boundaries }
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn basis(&self, k: usize) -> Option<&SimplexTable> {
        self.bases.get(k)
    }

    pub fn boundary(&self, k: usize) -> Option<&SparseIntMatrix> {
        self.boundaries.get(k)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.bases.iter().map(SimplexTable::len).collect()
    }

    /// Checks `∂_{k−1} ∘ ∂_k = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|k| {
            let (outer, inner) = (&self.boundaries[k - 1], &self.boundaries[k]);
            (0..inner.cols()).into_par_iter().all(|j| {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for (r, v) in inner.column_small(j).expect("boundary entries are ±1") {
                    for (r2, w) in outer.column_small(r as usize).expect("boundary entries are ±1") {
                        *acc.entry(r2).or_default() += v * w;
                    }
                }
                acc.values().all(|&x| x == 0)
            })
        })
    }

    /// Homology with coefficients in `coeff`.
    ///
    /// Degrees are reduced from the bottom up. Each unit pivot used on `∂_k`
    /// pairs a `k`-simplex with a `(k−1)`-face and is an elementary reduction
    /// of the chain complex, so the paired `k`-simplices can be dropped from
    /// the rows of `∂_{k+1}` without changing any homology group.
    pub fn homology(&self, coeff: Coeff) -> Result<GradedHomology> {
        let Some(top) = self.top_degree() else { return Ok(GradedHomology::zero(coeff)) };
        let n: Vec<usize> = self.f_vector();
        // ranks[k] = rank ∂_k, with ∂_0 = 0 and ∂_{top+1} = 0.
        let mut ranks = vec![0usize; top + 2];
        let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); top + 2];
        let mut keep_rows = vec![true; n[0]];
        for k in 1..=top {
            let d = self.boundaries[k].select(&keep_rows, &vec![true; n[k]]);
            let pairs = self.reduce(&d, coeff, k, &mut ranks, &mut torsion)?;
            keep_rows = vec![true; n[k]];
            for (_, c) in pairs {
                keep_rows[c as usize] = false;
            }
        }
        let mut h = GradedHomology::zero(coeff);
        for k in 0..=top {
            let free = n[k] - ranks[k] - ranks[k + 1];
            h.add(k, FgAbelianGroup::new(free, torsion[k + 1].iter().copied()))?;
        }
        Ok(h)
    }

    fn reduce(
        &self,
        d: &SparseIntMatrix,
        coeff: Coeff,
        k: usize,
        ranks: &mut [usize],
        torsion: &mut [Vec<u64>],
    ) -> Result<PivotPairs> {
        let (rank, pairs) = match coeff {
            Coeff::Integer => {
                let (snf, pairs) = smith_normal_form_paired(d);
                torsion[k] = snf
                    .torsion()
                    .iter()
                    .map(|t| u64::try_from(t).map_err(|_| Error::TorsionOverflow(t.to_string())))
                    .collect::<Result<_>>()?;
                (snf.rank(), pairs)
            }
            Coeff::Rational => rank_rational_paired(d),
            Coeff::Mod2 => rank_mod2_paired(d),
        };
        ranks[k] = rank;
        Ok(pairs)
    }
}

fn boundary_matrix(simplices: &SimplexTable, faces: &SimplexTable) -> SparseIntMatrix {
    let w = simplices.width();
    let columns: Vec<Vec<(u32, i64)>> = (0..simplices.len())
        .into_par_iter()
        .map(|j| {
            let s = simplices.get(j);
            let mut face = Vec::with_capacity(w - 1);
            (0..w)
                .map(|i| {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &v)| v));
                    let row = faces.position(&face).expect("faces are closed under taking subsets");
                    (row as u32, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    SparseIntMatrix::from_columns(faces.len(), columns)
}
