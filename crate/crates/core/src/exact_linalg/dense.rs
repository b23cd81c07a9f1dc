use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonalizes a dense integer matrix by unimodular row and column
/// operations and returns the nonzero diagonal (absolute values, in no
/// particular order). Pivot is always the entry of least absolute value.
pub(crate) fn diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // A smaller remainder survived in row or column t: make it the pivot.
            let mut best: Option<(usize, usize)> = None;
            let mut best_abs = p.abs();
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < best_abs {
                    best_abs = a[i][t].abs();
                    best = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < best_abs {
                    best_abs = a[t][j].abs();
                    best = Some((t, j));
                }
            }
            match best {
                Some((i, j)) if j == t => a.swap(t, i),
                Some((_, j)) => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                None => unreachable!("a nonzero remainder is smaller than the pivot"),
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_abs_entry(a: &[Vec<BigInt>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(_, b)| m < *b) {
                let unit = m.is_one();
                best = Some(((i, j), m));
                if unit {
                    return best.map(|(ix, _)| ix);
                }
            }
        }
    }
    best.map(|(ix, _)| ix)
}

/// Brings any list of positive diagonal entries to the divisibility chain
/// `d_1 | d_2 | ...`, dropping nothing (ones included).
pub(crate) fn invariant_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    let len = d.len();
    for i in 0..len {
        if d[i].is_one() {
            continue;
        }
        for j in i + 1..len {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

/// Rank over GF(2) by elimination on rows packed 64 columns per word.
pub(crate) fn rank_gf2_packed(rows: usize, cols: usize, ones: impl Iterator<Item = (usize, usize)>) -> usize {
    let words = cols.div_ceil(64);
    let mut m = vec![0u64; rows * words];
    for (r, c) in ones {
        m[r * words + c / 64] ^= 1 << (c % 64);
    }
    let mut rank = 0;
    for c in 0..cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows).find(|&r| m[r * words + w] & bit != 0) else { continue };
        if p != rank {
            for k in 0..words {
                m.swap(p * words + k, rank * words + k);
            }
        }
        for r in rank + 1..rows {
            if m[r * words + w] & bit != 0 {
                for k in w..words {
                    let v = m[rank * words + k];
                    m[r * words + k] ^= v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
