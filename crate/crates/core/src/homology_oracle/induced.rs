use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::chain::ChainComplexZ;
use super::rational_dense::{from_columns, nullspace, rref, QMatrix};
use crate::error::{Error, Result};
use crate::exact_linalg::{rank_rational, SparseIntMatrix};
use crate::graded::{Coeff, GradedHomology};
use crate::join_theory::{GradedMap, Matrix};
use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// Largest complex (total simplices) handled by the dense route used for
/// maps that are not involutions.
const DENSE_LIMIT: usize = 4000;

/// Matrix of `t_*` on `H_*(c; ℚ)`.
///
/// For an involution the chain complex splits into the `±1` eigencomplexes
/// `(1 ± t) C`, and the map is reported in a basis adapted to that split:
/// `+1` on the first `dim H(C^+)` generators, `−1` on the rest. Other maps
/// go through explicit cycle representatives over ℚ and are limited to
/// small complexes.
pub fn induced_map_on_homology(c: &SimplicialComplex, t: &SimplicialMap, coeff: Coeff) -> Result<GradedMap> {
    if coeff != Coeff::Rational {
        return Err(Error::Unsupported(format!("induced maps are computed over ℚ, not {coeff}")));
    }
    if !(t.is_self_map() && t.domain().as_ref() == c) {
        return Err(Error::DimensionMismatch("induced map needs a self-map of the given complex".into()));
    }
    let chain = ChainComplexZ::new(c);
    if t.is_involution() {
        involution_map(&chain, t)
    } else {
        dense_map(&chain, t)
    }
}

/// Partner simplex and orientation sign of `t` on every `k`-simplex.
fn action(chain: &ChainComplexZ, t: &SimplicialMap, k: usize) -> Vec<(u32, i8)> {
    let basis = chain.basis(k).expect("degree in range");
    (0..basis.len())
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            let sign = t.apply_oriented(basis.get(i), buf).expect("an involution is injective on vertices");
            (basis.position(buf).expect("automorphisms permute simplices") as u32, sign)
        })
        .collect()
}

fn involution_map(chain: &ChainComplexZ, t: &SimplicialMap) -> Result<GradedMap> {
    let Some(top) = chain.top_degree() else {
        let h = GradedHomology::zero(Coeff::Rational);
        return GradedMap::new(h.clone(), h, BTreeMap::new());
    };
    let actions: Vec<Vec<(u32, i8)>> = (0..=top).map(|k| action(chain, t, k)).collect();
    // Basis of (1 + s t) C_k for s = ±1: orbit representatives i ≤ t(i),
    // dropping fixed simplices on which t acts by −s.
    let index = |k: usize, s: i8| -> Vec<Option<u32>> {
        let mut next = 0u32;
        actions[k]
            .iter()
            .enumerate()
            .map(|(i, &(j, eps))| {
                let keep = (i as u32) < j || (i as u32 == j && eps == s);
                keep.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let mut dims = Vec::with_capacity(top + 1);
    for s in [1i8, -1] {
        let idx: Vec<Vec<Option<u32>>> = (0..=top).map(|k| index(k, s)).collect();
        let size: Vec<usize> = idx.iter().map(|v| v.iter().flatten().count()).collect();
        let ranks: Vec<usize> = (0..=top + 1)
            .into_par_iter()
            .map(|k| {
                if k == 0 || k > top {
                    return 0;
                }
                let d = chain.boundary(k).expect("degree in range");
                let cols = (0..d.cols()).filter(|&i| idx[k][i].is_some()).map(|i| {
                    let mut col: Vec<(u32, i64)> = Vec::new();
                    for (r, v) in d.column_small(i).expect("boundary entries are ±1") {
                        if let Some(row) = idx[k - 1][r as usize] {
                            col.push((row, v));
                        }
                        let (partner, eps) = actions[k - 1][r as usize];
                        if let Some(row) = idx[k - 1][partner as usize] {
                            col.push((row, i64::from(s) * i64::from(eps) * v));
                        }
                    }
                    col.sort_unstable_by_key(|e| e.0);
                    let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
                    for (r, v) in col {
                        match merged.last_mut() {
                            Some(last) if last.0 == r => last.1 += v,
                            _ => merged.push((r, v)),
                        }
                    }
                    merged.retain(|e| e.1 != 0);
                    merged
                });
                rank_rational(&SparseIntMatrix::from_columns(size[k - 1], cols))
            })
            .collect();
        dims.push((0..=top).map(|k| size[k] - ranks[k] - ranks[k + 1]).collect::<Vec<_>>());
    }
    let (plus, minus) = (&dims[0], &dims[1]);
    let h = GradedHomology::from_ranks(Coeff::Rational, (0..=top).map(|k| (k, plus[k] + minus[k])));
    let signs = (0..=top)
        .filter(|&k| plus[k] + minus[k] > 0)
        .map(|k| (k, std::iter::repeat_n(1, plus[k]).chain(std::iter::repeat_n(-1, minus[k])).collect()))
        .collect();
    GradedMap::diagonal(&h, &signs)
}

fn dense_boundary(chain: &ChainComplexZ, k: usize) -> QMatrix {
    let rows = if k == 0 { 0 } else { chain.basis(k - 1).map_or(0, |b| b.len()) };
    let cols = chain.basis(k).map_or(0, |b| b.len());
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    if k > 0 {
        if let Some(d) = chain.boundary(k) {
            for (r, c, v) in d.iter() {
                m[r][c] = BigRational::from_integer(v);
            }
        }
    }
    m
}

pub(super) fn dense_map(chain: &ChainComplexZ, t: &SimplicialMap) -> Result<GradedMap> {
    let total: usize = chain.f_vector().iter().sum();
    if total > DENSE_LIMIT {
        return Err(Error::Unsupported(format!(
            "induced map of a non-involution on {total} simplices (limit {DENSE_LIMIT})"
        )));
    }
    let mut ranks = Vec::new();
    let mut blocks = BTreeMap::new();
    let mut buf = Vec::new();
    let top = chain.top_degree().unwrap_or(0);
    for k in 0..=top {
        let Some(basis) = chain.basis(k) else { break };
        let nk = basis.len();
        let cycles = nullspace(&dense_boundary(chain, k), nk);
        let bounds: Vec<Vec<BigRational>> = if k < top {
            let d = dense_boundary(chain, k + 1);
            (0..d.first().map_or(0, Vec::len)).map(|j| d.iter().map(|row| row[j].clone()).collect()).collect()
        } else {
            Vec::new()
        };
        // Extend a basis of the boundaries to one of the cycles.
        let all: Vec<Vec<BigRational>> = bounds.iter().chain(cycles.iter()).cloned().collect();
        let mut m = from_columns(&all, nk);
        let pivots = rref(&mut m);
        let b_basis: Vec<&Vec<BigRational>> = pivots.iter().filter(|&&p| p < bounds.len()).map(|&p| &all[p]).collect();
        let reps: Vec<&Vec<BigRational>> = pivots.iter().filter(|&&p| p >= bounds.len()).map(|&p| &all[p]).collect();
        ranks.push((k, reps.len()));
        if reps.is_empty() {
            continue;
        }
        let mut block: Matrix = vec![vec![0; reps.len()]; reps.len()];
        for (col, h) in reps.iter().enumerate() {
            let mut image = vec![BigRational::zero(); nk];
            for (i, coef) in h.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if let Some(sign) = t.apply_oriented(basis.get(i), &mut buf) {
                    let j = basis.position(&buf).expect("simplicial maps send simplices to simplices");
                    image[j] += coef * BigRational::from_integer(sign.into());
                }
            }
            let mut system: Vec<Vec<BigRational>> = b_basis.iter().chain(reps.iter()).map(|v| (*v).clone()).collect();
            system.push(image);
            let mut a = from_columns(&system, nk);
            let piv = rref(&mut a);
            let unknowns = b_basis.len() + reps.len();
            if piv.last() == Some(&unknowns) {
                return Err(Error::NotSimplicial("image of a cycle is not a cycle".into()));
            }
            for (row, coef) in (b_basis.len()..unknowns).enumerate() {
                let x = &a[coef][unknowns];
                if !x.is_integer() {
                    return Err(Error::Unsupported("induced matrix is not integral in the chosen basis".into()));
                }
                block[row][col] =
                    x.to_integer().to_i64().ok_or_else(|| Error::Unsupported("entry too large".into()))?;
            }
        }
        blocks.insert(k, block);
    }
    let h = GradedHomology::from_ranks(Coeff::Rational, ranks);
    GradedMap::new(h.clone(), h, blocks)
}
