use std::fmt::Write as _;

use num_bigint::BigInt;

use super::SparseIntMatrix;
use crate::error::{Error, Result};

const HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Writes `m` in MatrixMarket coordinate form with 1-based indices.
pub fn write_triplets(m: &SparseIntMatrix) -> String {
    let mut out = format!("{HEADER}\n{} {} {}\n", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.iter() {
        let _ = writeln!(out, "{} {} {}", r + 1, c + 1, v);
    }
    out
}

/// Reads the format produced by [`write_triplets`]. Lines starting with `%`
/// are comments.
pub fn read_triplets(text: &str) -> Result<SparseIntMatrix> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let parse_err = |line: usize, msg: &str| Error::Parse { line, message: msg.into() };

    let (ln, size) = lines.next().ok_or_else(|| parse_err(0, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(ln, "bad size line")))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_err(ln, "size line needs rows, cols and entry count"));
    };

    let mut entries = Vec::with_capacity(nnz);
    for (ln, line) in lines {
        let tok: Vec<&str> = line.split_whitespace().collect();
        let [r, c, v] = tok[..] else {
            return Err(parse_err(ln, "expected `row col value`"));
        };
        let r: usize = r.parse().map_err(|_| parse_err(ln, "bad row index"))?;
        let c: usize = c.parse().map_err(|_| parse_err(ln, "bad column index"))?;
        let v: BigInt = v.parse().map_err(|_| parse_err(ln, "bad value"))?;
        if r == 0 || r > rows || c == 0 || c > cols {
            return Err(parse_err(ln, "index out of range"));
        }
        entries.push((r - 1, c - 1, v));
    }
    if entries.len() != nnz {
        let message = format!("expected {nnz} entries, found {}", entries.len());
        return Err(Error::Parse { line: 0, message });
    }
    Ok(SparseIntMatrix::from_triplets(rows, cols, entries))
}
