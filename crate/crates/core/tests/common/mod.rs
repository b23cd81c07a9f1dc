//! Independent oracles for the exact linear algebra checks.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use quadhom::exact_linalg::{rank_mod2, rank_mod2_paired, rank_rational, smith_normal_form, SparseIntMatrix};

/// Small dense matrix, 2×2 up to 6×6, shapes independent.
pub fn small_dense() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=6, 2usize..=6).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![3 => Just(0i64), 5 => -6i64..=6, 1 => prop::sample::select(vec![-12i64, 8, 18, 30])];
        prop::collection::vec(prop::collection::vec(entry, c), r)
    })
}

/// 40×40 sparse matrix, either random or a product forced to low rank.
pub fn sparse_40() -> impl Strategy<Value = SparseIntMatrix> {
    let triplets = |rows: usize, cols: usize, max: usize| {
        prop::collection::vec((0..rows, 0..cols, -4i64..=4), 0..max).prop_map(move |t| {
            SparseIntMatrix::from_triplets(rows, cols, t.into_iter().map(|(r, c, v)| (r, c, BigInt::from(v))))
        })
    };
    prop_oneof![
        triplets(40, 40, 200),
        (1usize..20).prop_flat_map(move |k| (triplets(40, k, 80), triplets(k, 40, 80)).prop_map(|(a, b)| a.mul(&b))),
    ]
}

fn det(mut a: Vec<Vec<i128>>) -> i128 {
    // Bareiss fraction-free elimination.
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from determinantal divisors: `s_k = d_k / d_{k-1}` where
/// `d_k` is the gcd of all k×k minors.
pub fn invariants_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut d = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                d = d.gcd(&det(minor));
            }
        }
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

pub fn check_snf_against_minors(rows: &[Vec<i64>]) -> Result<(), String> {
    let expected = invariants_by_minors(rows);
    let snf = smith_normal_form(&SparseIntMatrix::from_dense(rows));
    let got: Vec<i128> = snf.invariants().iter().map(|d| d.to_i128().expect("small")).collect();
    if got == expected {
        Ok(())
    } else {
        Err(format!("{rows:?}: smith {got:?}, minors {expected:?}"))
    }
}

/// Rank over ℚ by plain Gaussian elimination on rationals.
pub fn rank_by_fractions(m: &SparseIntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.to_dense().into_iter().map(|row| row.into_iter().map(BigRational::from_integer).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(2) with one `u64` bitmask per row; at most 64 columns.
pub fn rank_by_bitmasks(m: &SparseIntMatrix) -> usize {
    assert!(m.cols() <= 64);
    let two = BigInt::from(2);
    let mut rows = vec![0u64; m.rows()];
    for (r, c, v) in m.iter() {
        if !v.mod_floor(&two).is_zero() {
            rows[r] ^= 1 << c;
        }
    }
    let mut rank = 0;
    for bit in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            if rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

pub fn check_rank_relations(m: &SparseIntMatrix) -> Result<(), String> {
    let snf = smith_normal_form(m);
    let rq = rank_rational(m);
    let r2 = rank_mod2(m);
    let facts = [
        ("rank_Q = smith rank", rq == snf.rank()),
        ("rank_Q = fraction elimination", rq == rank_by_fractions(m)),
        ("rank_F2 = smith rank - even factors", r2 == snf.rank() - snf.even_count()),
        ("rank_F2 = bitmask elimination", r2 == rank_by_bitmasks(m)),
        ("sparse GF(2) = dense GF(2)", rank_mod2_paired(m).0 == r2),
        ("transpose keeps smith form", smith_normal_form(&m.transpose()) == snf),
    ];
    match facts.iter().find(|(_, ok)| !ok) {
        None => Ok(()),
        Some((name, _)) => Err(format!("{name} fails on {} nonzeros", m.nnz())),
    }
}
