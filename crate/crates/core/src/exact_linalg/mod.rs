//! Exact sparse integer linear algebra: Smith normal form, GF(2) rank and
//! rational rank.
//!
//! All three reductions share one sparse eliminator. Each first runs over
//! checked `i64` and reruns over `BigInt` if an intermediate overflows.

mod dense;
mod eliminate;
mod scalar;
mod triplet;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use eliminate::{eliminate, Line, Pivoting};
use scalar::{Gf2, Scalar};

pub use triplet::{read_triplets, write_triplets};

/// Below this many cells GF(2) rank uses dense packed rows.
const PACKED_GF2_LIMIT: usize = 1 << 22;

/// Sparse integer matrix with arbitrary-precision entries.
///
/// Stored column-major. Entries that fit in `i64` live inline; larger ones
/// are kept in a side table and the inline slot holds `i64::MIN`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: Vec<i64>,
    big: BTreeMap<(usize, usize), BigInt>,
}

const BIG_SLOT: i64 = i64::MIN;

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, col_ptr: vec![0; cols + 1], row_idx: Vec::new(), vals: Vec::new(), big: BTreeMap::new() }
    }

    /// Duplicate positions are summed; zero results are dropped.
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((c, r)).or_default() += v;
        }
        let mut m = Self::zero(rows, cols);
        for ((c, r), v) in acc.into_iter().filter(|(_, v)| !v.is_zero()) {
            m.push_sorted(r, c, v);
        }
        m.finish_columns();
        m
    }

    /// Fast path for small entries supplied column by column. Each column
    /// must list distinct rows; zero values are skipped.
    pub fn from_columns(rows: usize, columns: impl IntoIterator<Item = Vec<(u32, i64)>>) -> Self {
        let mut col_ptr = vec![0];
        let mut row_idx = Vec::new();
        let mut vals = Vec::new();
        for mut col in columns {
            col.sort_unstable_by_key(|e| e.0);
            for (r, v) in col {
                assert!((r as usize) < rows, "row {r} outside matrix with {rows} rows");
                assert!(v != BIG_SLOT, "use from_triplets for entries below i64::MIN + 1");
                if v != 0 {
                    row_idx.push(r);
                    vals.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        let cols = col_ptr.len() - 1;
        Self { rows, cols, col_ptr, row_idx, vals, big: BTreeMap::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_columns(nrows, (0..ncols).map(|c| (0..nrows).map(|r| (r as u32, rows[r][c])).collect()))
    }

    fn push_sorted(&mut self, r: usize, c: usize, v: BigInt) {
        // col_ptr is filled in finish_columns; here it counts per column.
        self.col_ptr[c + 1] += 1;
        self.row_idx.push(r as u32);
        match v.to_i64().filter(|&x| x != BIG_SLOT) {
            Some(x) => self.vals.push(x),
            None => {
                self.vals.push(BIG_SLOT);
                self.big.insert((r, c), v);
            }
        }
    }

    fn finish_columns(&mut self) {
        for c in 0..self.cols {
            self.col_ptr[c + 1] += self.col_ptr[c];
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    fn value_at(&self, k: usize, c: usize) -> BigInt {
        match self.vals[k] {
            BIG_SLOT => self.big[&(self.row_idx[k] as usize, c)].clone(),
            v => BigInt::from(v),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        let span = self.col_ptr[c]..self.col_ptr[c + 1];
        match self.row_idx[span.clone()].binary_search(&(r as u32)) {
            Ok(k) => self.value_at(span.start + k, c),
            Err(_) => BigInt::zero(),
        }
    }

    /// Nonzero entries in column-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, BigInt)> + '_ {
        (0..self.cols).flat_map(move |c| {
            (self.col_ptr[c]..self.col_ptr[c + 1]).map(move |k| (self.row_idx[k] as usize, c, self.value_at(k, c)))
        })
    }

    /// Column `c` as `(row, value)` pairs with small values, or `None` if a
    /// value needs more than 64 bits.
    pub fn column_small(&self, c: usize) -> Option<Vec<(u32, i64)>> {
        let span = self.col_ptr[c]..self.col_ptr[c + 1];
        if self.vals[span.clone()].contains(&BIG_SLOT) {
            return None;
        }
        Some(self.row_idx[span.clone()].iter().copied().zip(self.vals[span].iter().copied()).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.iter().map(|(r, c, v)| (c, r, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            d[r][c] = v;
        }
        d
    }

    /// Matrix product, used by chain-complex sanity checks.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        let mut by_col: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            by_col[c].push((r, v));
        }
        for (k, j, w) in rhs.iter() {
            for (i, v) in &by_col[k] {
                *acc.entry((*i, j)).or_default() += v * &w;
            }
        }
        Self::from_triplets(self.rows, rhs.cols, acc.into_iter().map(|((i, j), v)| (i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// Submatrix on the rows and columns whose mask entry is `true`, with
    /// indices renumbered in order.
    pub fn select(&self, keep_rows: &[bool], keep_cols: &[bool]) -> Self {
        assert_eq!((keep_rows.len(), keep_cols.len()), (self.rows, self.cols), "mask sizes differ");
        let mut new_row = vec![u32::MAX; self.rows];
        let mut rows = 0usize;
        for (r, _) in keep_rows.iter().enumerate().filter(|e| *e.1) {
            new_row[r] = rows as u32;
            rows += 1;
        }
        let mut out = Self::zero(rows, 0);
        out.col_ptr.clear();
        out.col_ptr.push(0);
        for c in (0..self.cols).filter(|&c| keep_cols[c]) {
            for k in self.col_ptr[c]..self.col_ptr[c + 1] {
                let r = new_row[self.row_idx[k] as usize];
                if r == u32::MAX {
                    continue;
                }
                out.row_idx.push(r);
                out.vals.push(self.vals[k]);
                if self.vals[k] == BIG_SLOT {
                    out.big.insert((r as usize, out.cols), self.big[&(self.row_idx[k] as usize, c)].clone());
                }
            }
            out.cols += 1;
            out.col_ptr.push(out.row_idx.len());
        }
        out
    }

    fn lines<S: Scalar>(&self, convert: impl Fn(&BigInt) -> S) -> Vec<Line<S>> {
        (0..self.cols)
            .map(|c| {
                (self.col_ptr[c]..self.col_ptr[c + 1])
                    .map(|k| (self.row_idx[k], convert(&self.value_at(k, c))))
                    .collect()
            })
            .collect()
    }

    fn small_lines(&self) -> Option<Vec<Line<i64>>> {
        if !self.big.is_empty() {
            return None;
        }
        Some(
            (0..self.cols)
                .map(|c| (self.col_ptr[c]..self.col_ptr[c + 1]).map(|k| (self.row_idx[k], self.vals[k])).collect())
                .collect(),
        )
    }
}

/// Invariant factors `d_1 | ... | d_r` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    ones: usize,
    higher: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.ones + self.higher.len()
    }

    /// Full list of invariant factors, unit factors included.
    pub fn invariants(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::one(), self.ones).chain(self.higher.iter().cloned()).collect()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> &[BigInt] {
        &self.higher
    }

    pub fn even_count(&self) -> usize {
        self.higher.iter().filter(|d| (*d % 2u32).is_zero()).count()
    }

    fn from_diagonal(diag: Vec<BigInt>) -> Self {
        let chain = dense::invariant_chain(diag.into_iter().map(|d| d.abs()).collect());
        let ones = chain.iter().take_while(|d| d.is_one()).count();
        Self { ones, higher: chain[ones..].to_vec() }
    }
}

/// Pivot positions `(row, column)` at which an elimination acted as an
/// elementary reduction: the pivot is a unit of the coefficient ring.
pub type PivotPairs = Vec<(u32, u32)>;

/// Smith normal form by sparse divisor-pivot elimination followed by a dense
/// reduction of whatever block is left.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    smith_normal_form_paired(m).0
}

/// [`smith_normal_form`] together with the unit pivots it used.
pub fn smith_normal_form_paired(m: &SparseIntMatrix) -> (SmithForm, PivotPairs) {
    fn finish<S: Scalar>(r: eliminate::Reduced<S>) -> (SmithForm, PivotPairs) {
        let pairs = r.positions.iter().zip(&r.pivots).filter(|(_, p)| p.is_unit()).map(|(&rc, _)| rc).collect();
        let mut diag: Vec<BigInt> = r.pivots.iter().map(Scalar::to_bigint).collect();
        if !r.remainder.is_empty() {
            let mut used: Vec<u32> = r.remainder.iter().flat_map(|l| l.iter().map(|e| e.0)).collect();
            used.sort_unstable();
            used.dedup();
            let mut dense = vec![vec![BigInt::zero(); used.len()]; r.remainder.len()];
            for (i, line) in r.remainder.iter().enumerate() {
                for (c, v) in line {
                    dense[i][used.binary_search(c).unwrap()] = v.to_bigint();
                }
            }
            diag.extend(dense::diagonalize(dense));
        }
        (SmithForm::from_diagonal(diag), pairs)
    }
    if let Some(lines) = m.small_lines() {
        if let Some(r) = eliminate(lines, m.rows, Pivoting::Divisor) {
            return finish(r);
        }
    }
    let r = eliminate(m.lines(Clone::clone), m.rows, Pivoting::Divisor).expect("BigInt arithmetic cannot overflow");
    finish(r)
}

/// Rank of the reduction mod 2.
pub fn rank_mod2(m: &SparseIntMatrix) -> usize {
    if m.rows.saturating_mul(m.cols) <= PACKED_GF2_LIMIT {
        let odd = |v: &BigInt| !(v % 2u32).is_zero();
        return dense::rank_gf2_packed(m.cols, m.rows, m.iter().filter(|(_, _, v)| odd(v)).map(|(r, c, _)| (c, r)));
    }
    rank_mod2_paired(m).0
}

/// GF(2) rank by sparse elimination, with every pivot it used.
pub fn rank_mod2_paired(m: &SparseIntMatrix) -> (usize, PivotPairs) {
    let odd = |v: &BigInt| !(v % 2u32).is_zero();
    let lines: Vec<Line<Gf2>> = (0..m.cols)
        .map(|c| {
            (m.col_ptr[c]..m.col_ptr[c + 1])
                .filter(|&k| match m.vals[k] {
                    BIG_SLOT => odd(&m.value_at(k, c)),
                    v => v & 1 == 1,
                })
                .map(|k| (m.row_idx[k], Gf2(true)))
                .collect()
        })
        .collect();
    let r = eliminate(lines, m.rows, Pivoting::Any).expect("GF(2) cannot overflow");
    (r.pivots.len(), r.positions)
}

/// Exact rank over ℚ by fraction-free sparse elimination.
pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    rank_rational_paired(m).0
}

/// [`rank_rational`] with every pivot it used; over a field each one is a unit.
pub fn rank_rational_paired(m: &SparseIntMatrix) -> (usize, PivotPairs) {
    if let Some(lines) = m.small_lines() {
        if let Some(r) = eliminate(lines, m.rows, Pivoting::Any) {
            return (r.pivots.len(), r.positions);
        }
    }
    let r = eliminate(m.lines(Clone::clone), m.rows, Pivoting::Any).expect("BigInt arithmetic cannot overflow");
    (r.pivots.len(), r.positions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&m(&[&[2, 4], &[6, 8]])).invariants(), ints(&[2, 4]));
        assert_eq!(smith_normal_form(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).invariants(), ints(&[1, 1, 1]));
        let z = smith_normal_form(&SparseIntMatrix::zero(3, 4));
        assert_eq!(z.rank(), 0);
        assert!(z.invariants().is_empty());
        assert_eq!(smith_normal_form(&SparseIntMatrix::zero(0, 0)).rank(), 0);
    }

    #[test]
    fn rank_mod2_examples() {
        assert_eq!(rank_mod2(&m(&[&[2, 4], &[6, 8]])), 0);
        assert_eq!(rank_mod2(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank_mod2(&m(&[&[1, 1], &[1, 1]])), 1);
    }

    #[test]
    fn rank_rational_examples() {
        assert_eq!(rank_rational(&m(&[&[2, 4], &[6, 8]])), 2);
        assert_eq!(rank_rational(&SparseIntMatrix::zero(4, 4)), 0);
        let u = [1, -2, 3, 5];
        let v = [2, 0, -1, 7];
        let outer: Vec<Vec<i64>> = u.iter().map(|a| v.iter().map(|b| a * b).collect()).collect();
        assert_eq!(rank_rational(&SparseIntMatrix::from_dense(&outer)), 1);
    }

    #[test]
    fn big_entries_survive_storage() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(1000);
        let mm = SparseIntMatrix::from_triplets(2, 2, [(0, 0, huge.clone()), (1, 1, BigInt::from(3))]);
        assert_eq!(mm.get(0, 0), huge);
        assert_eq!(mm.get(1, 0), BigInt::zero());
        // gcd(3, huge) = 1
        assert_eq!(smith_normal_form(&mm).invariants(), vec![BigInt::one(), &huge * BigInt::from(3)]);
        assert_eq!(rank_rational(&mm), 2);
        assert_eq!(rank_mod2(&mm), 1);
    }

    #[test]
    fn select_renumbers() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(7);
        let mm = SparseIntMatrix::from_triplets(
            3,
            3,
            [(0, 0, BigInt::from(1)), (1, 1, BigInt::from(2)), (2, 2, huge.clone()), (2, 0, BigInt::from(5))],
        );
        let sub = mm.select(&[false, true, true], &[true, false, true]);
        assert_eq!((sub.rows(), sub.cols()), (2, 2));
        assert_eq!(sub.get(1, 0), BigInt::from(5));
        assert_eq!(sub.get(1, 1), huge);
        assert_eq!(sub.nnz(), 2);
    }

    #[test]
    fn paired_ranks_agree() {
        let mm = m(&[&[1, 1, 0], &[0, 2, 2], &[1, 3, 2]]);
        let (r, pairs) = rank_rational_paired(&mm);
        assert_eq!((r, pairs.len()), (2, 2));
        let (snf, units) = smith_normal_form_paired(&mm);
        assert_eq!(snf.rank(), 2);
        assert!(units.len() <= 2);
        assert_eq!(rank_mod2_paired(&mm).0, rank_mod2(&mm));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // Fraction-free updates on this matrix overflow i64 quickly.
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i * 7 + j * 13) % 11) as i64 * 100_000_007 + (i == j) as i64).collect())
            .collect();
        let mm = SparseIntMatrix::from_dense(&rows);
        let snf = smith_normal_form(&mm);
        assert_eq!(snf.rank(), rank_rational(&mm));
    }

    proptest! {
        #[test]
        fn transpose_preserves_invariants(rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 1..5)) {
            let mm = SparseIntMatrix::from_dense(&rows);
            prop_assert_eq!(smith_normal_form(&mm), smith_normal_form(&mm.transpose()));
        }
    }
}
