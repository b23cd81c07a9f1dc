//! Homology of joins and of joins of self-maps, computed from the factors.
//!
//! For torsion-free factors, `H_n(X ⋆ Y)` is the degree `n − 1` part of
//! `Ker(i_X) ⊗ Ker(i_Y)`, where `Ker(i_Z)` is reduced `H_0(Z)` plus all of
//! `H_{>0}(Z)`, and `(f ⋆ g)_*` is `f_* ⊗ g_*` on that tensor product.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{rank_rational, SparseIntMatrix};
use crate::graded::{augmentation_kernel, tensor_degree, Coeff, FgAbelianGroup, GradedHomology, PointedGradedHomology};

pub type Matrix = Vec<Vec<i64>>;

/// A homomorphism of torsion-free graded groups, one integer matrix per
/// degree acting on free generators (columns are images).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedHomology,
    target: GradedHomology,
    blocks: BTreeMap<usize, Matrix>,
}

impl GradedMap {
    /// Degrees whose block is omitted are zero maps.
    pub fn new(source: GradedHomology, target: GradedHomology, blocks: BTreeMap<usize, Matrix>) -> Result<Self> {
        for h in [&source, &target] {
            if let Some(degree) = h.torsion_degree() {
                return Err(Error::TorsionPresent { degree });
            }
        }
        let mut all = BTreeMap::new();
        let degrees: std::collections::BTreeSet<usize> =
            source.degrees().chain(target.degrees()).chain(blocks.keys().copied()).collect();
        for k in degrees {
            let (rows, cols) = (target.rank(k), source.rank(k));
            let m = blocks.get(&k).cloned().unwrap_or_else(|| vec![vec![0; cols]; rows]);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(Error::DimensionMismatch(format!("block in degree {k} must be {rows}×{cols}")));
            }
            if rows > 0 && cols > 0 {
                all.insert(k, m);
            }
        }
        Ok(Self { source, target, blocks: all })
    }

    pub fn identity(h: &GradedHomology) -> Result<Self> {
        let blocks = h.iter().map(|(k, g)| (k, identity_matrix(g.free_rank()))).collect();
        Self::new(h.clone(), h.clone(), blocks)
    }

    /// Self-map acting by `±1` on degree `k` generators.
    pub fn diagonal(h: &GradedHomology, signs: &BTreeMap<usize, Vec<i64>>) -> Result<Self> {
        let blocks = signs
            .iter()
            .map(|(&k, d)| {
                let mut m = vec![vec![0; d.len()]; d.len()];
                for (i, &s) in d.iter().enumerate() {
                    m[i][i] = s;
                }
                (k, m)
            })
            .collect();
        Self::new(h.clone(), h.clone(), blocks)
    }

    pub fn source(&self) -> &GradedHomology {
        &self.source
    }

    pub fn target(&self) -> &GradedHomology {
        &self.target
    }

    /// Block in degree `k`; zero-sized when either side vanishes.
    pub fn block(&self, k: usize) -> Matrix {
        self.blocks.get(&k).cloned().unwrap_or_else(|| vec![vec![0; self.source.rank(k)]; self.target.rank(k)])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Matrix)> {
        self.blocks.iter().map(|(k, m)| (*k, m))
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source.rank_vector() == self.target.rank_vector()
    }

    pub fn is_involution(&self) -> bool {
        self.is_endomorphism() && self.blocks.iter().all(|(_, m)| mat_mul(m, m) == identity_matrix(m.len()))
    }

    /// `Σ_k (−1)^k trace(block_k)`.
    pub fn lefschetz_number(&self) -> i64 {
        self.blocks
            .iter()
            .map(|(k, m)| {
                let t: i64 = (0..m.len()).map(|i| m[i][i]).sum();
                if k % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct RawBlock {
    degree: usize,
    matrix: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    source: GradedHomology,
    target: GradedHomology,
    blocks: Vec<RawBlock>,
}

impl Serialize for GradedMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|(&degree, m)| RawBlock { degree, matrix: m.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMap::deserialize(d)?;
        let blocks = raw.blocks.into_iter().map(|b| (b.degree, b.matrix)).collect();
        GradedMap::new(raw.source, raw.target, blocks).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

/// Kronecker product; generator `(i, j)` of the result is at `i * |b| + j`.
pub(crate) fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = (a.len(), a.first().map_or(0, Vec::len));
    let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0; ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub(crate) fn block_diag(parts: &[Matrix]) -> Matrix {
    let rows: usize = parts.iter().map(Vec::len).sum();
    let cols: usize = parts.iter().map(|m| m.first().map_or(0, Vec::len)).sum();
    let mut out = vec![vec![0; cols]; rows];
    let (mut r0, mut c0) = (0, 0);
    for m in parts {
        let c = m.first().map_or(0, Vec::len);
        for (i, row) in m.iter().enumerate() {
            out[r0 + i][c0..c0 + c].copy_from_slice(row);
        }
        r0 += m.len();
        c0 += c;
    }
    out
}

/// Homology of `X ⋆ Y` from pointed homology of the factors.
pub fn join_homology(x: &PointedGradedHomology, y: &PointedGradedHomology) -> Result<GradedHomology> {
    for h in [x.homology(), y.homology()] {
        if let Some(degree) = h.torsion_degree() {
            return Err(Error::TorsionPresent { degree });
        }
    }
    let (kx, ky) = (augmentation_kernel(x), augmentation_kernel(y));
    let mut out = GradedHomology::zero(x.homology().coeff());
    out.add(0, FgAbelianGroup::free(1))?;
    if let (Some(tx), Some(ty)) = (kx.top_degree(), ky.top_degree()) {
        for m in 1..=tx + ty + 1 {
            out.add(m, tensor_degree(&kx, &ky, m - 1)?)?;
        }
    }
    Ok(out)
}

/// Restriction of a self-map to `Ker(i_Z)`, one block per degree.
///
/// `H_0` generators are the components `b_1, …, b_c`; the kernel basis is
/// `b_i − b_{i+1}`.
fn kernel_blocks(f: &GradedMap, z: &PointedGradedHomology) -> Result<BTreeMap<usize, Matrix>> {
    if f.source().rank_vector() != z.homology().rank_vector() || !f.is_endomorphism() {
        return Err(Error::DimensionMismatch("map does not act on the given homology".into()));
    }
    let mut out = BTreeMap::new();
    for (k, g) in z.homology().iter() {
        if k > 0 {
            out.insert(k, f.block(k));
            continue;
        }
        let c = g.free_rank();
        let f0 = f.block(0);
        let col_sum = |j: usize| -> i64 { (0..c).map(|i| f0[i][j]).sum() };
        if (1..c).any(|j| col_sum(j) != col_sum(0)) {
            return Err(Error::KernelNotPreserved { degree: 0 });
        }
        let mut m = vec![vec![0; c - 1]; c - 1];
        for j in 0..c - 1 {
            let w: Vec<i64> = (0..c).map(|i| f0[i][j] - f0[i][j + 1]).collect();
            let mut acc = 0;
            for i in 0..c - 1 {
                acc += w[i];
                m[i][j] = acc;
            }
        }
        if c > 1 {
            out.insert(0, m);
        }
    }
    Ok(out)
}

/// `(f ⋆ g)_*` on `H_*(X ⋆ Y)`: identity on `H_0`, and in degree `m` the
/// direct sum over `i + j = m − 1` of `f_i ⊗ g_j` restricted to kernels.
pub fn join_induced_map(
    f: &GradedMap,
    g: &GradedMap,
    x: &PointedGradedHomology,
    y: &PointedGradedHomology,
) -> Result<GradedMap> {
    let (fk, gk) = (kernel_blocks(f, x)?, kernel_blocks(g, y)?);
    let h = join_homology(x, y)?;
    let mut blocks = BTreeMap::new();
    blocks.insert(0, vec![vec![1]]);
    for m in 1..=h.top_degree().unwrap_or(0) {
        let parts: Vec<Matrix> = (0..m).filter_map(|i| Some(kron(fk.get(&i)?, gk.get(&(m - 1 - i))?))).collect();
        if !parts.is_empty() {
            blocks.insert(m, block_diag(&parts));
        }
    }
    GradedMap::new(h.clone(), h, blocks)
}

/// Rational dimension of the fixed subspace of an involution, per degree.
pub fn invariant_subgroup(m: &GradedMap) -> Result<GradedHomology> {
    if !m.is_endomorphism() {
        return Err(Error::NotInvolution("source and target differ".into()));
    }
    let mut ranks = Vec::new();
    for (k, g) in m.source().iter() {
        let b = m.block(k);
        if mat_mul(&b, &b) != identity_matrix(b.len()) {
            return Err(Error::NotInvolution(format!("block in degree {k} does not square to the identity")));
        }
        let shifted: Matrix = b
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, &v)| v - i64::from(i == j)).collect())
            .collect();
        let fixed = g.free_rank() - rank_rational(&SparseIntMatrix::from_dense(&shifted));
        ranks.push((k, fixed));
    }
    Ok(GradedHomology::from_ranks(Coeff::Rational, ranks))
}

/// Pointed homology of `S^k`.
pub fn sphere_homology(k: usize) -> PointedGradedHomology {
    let h = if k == 0 {
        GradedHomology::from_ranks(Coeff::Integer, [(0, 2)])
    } else {
        GradedHomology::from_ranks(Coeff::Integer, [(0, 1), (k, 1)])
    };
    PointedGradedHomology::from_homology(h).expect("rank of H_0 is the component count")
}

/// Action of the antipode of `S^k`: degree `(−1)^{k+1}` on the top class,
/// and for `S^0` the swap of the two points.
pub fn sphere_antipode(k: usize) -> GradedMap {
    let h = sphere_homology(k).homology().clone();
    let mut blocks = BTreeMap::new();
    if k == 0 {
        blocks.insert(0, vec![vec![0, 1], vec![1, 0]]);
    } else {
        blocks.insert(0, vec![vec![1]]);
        blocks.insert(k, vec![vec![if k.is_multiple_of(2) { -1 } else { 1 }]]);
    }
    GradedMap::new(h.clone(), h, blocks).expect("blocks sized to the sphere")
}

/// Künneth homology of `X × Y` for torsion-free factors.
pub fn product_homology(x: &PointedGradedHomology, y: &PointedGradedHomology) -> Result<PointedGradedHomology> {
    let h = crate::graded::tensor(x.homology(), y.homology())?;
    PointedGradedHomology::new(h, x.component_count() * y.component_count())
}

/// `(f × g)_*` under the Künneth isomorphism; in degree `k` the direct sum
/// over `i + j = k` (ascending `i`) of `f_i ⊗ g_j`.
pub fn product_map(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    let src = crate::graded::tensor(f.source(), g.source())?;
    let tgt = crate::graded::tensor(f.target(), g.target())?;
    let mut blocks = BTreeMap::new();
    for k in src.degrees().collect::<Vec<_>>() {
        let parts: Vec<Matrix> = (0..=k)
            .filter(|&i| f.source().rank(i) * g.source().rank(k - i) > 0)
            .map(|i| kron(&f.block(i), &g.block(k - i)))
            .collect();
        blocks.insert(k, block_diag(&parts));
    }
    GradedMap::new(src, tgt, blocks)
}
