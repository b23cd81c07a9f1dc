//! Sparse Gaussian elimination with Markowitz-style pivot choice.
//!
//! The matrix is held as a list of sparse *lines* (the columns of a boundary
//! matrix, in practice) and eliminated one pivot column at a time. The
//! column with the fewest live entries is taken first; inside it the pivot
//! line is the one with the best pivot value, then the fewest entries.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::scalar::Scalar;

pub(crate) type Line<S> = Vec<(u32, S)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pivoting {
    /// Only pivots that divide every other entry of their line and column.
    /// The Schur complement then has the same Smith form as the remainder.
    Divisor,
    /// Any nonzero pivot, fraction-free updates. Rank only.
    Any,
}

#[derive(Debug)]
pub(crate) struct Reduced<S> {
    pub pivots: Vec<S>,
    /// `(column, line)` of each pivot, in elimination order.
    pub positions: Vec<(u32, u32)>,
    /// Lines never used as pivots that still carry entries.
    pub remainder: Vec<Line<S>>,
}

/// Returns `None` when the scalar arithmetic overflows.
pub(crate) fn eliminate<S: Scalar>(mut lines: Vec<Line<S>>, ncols: usize, pivoting: Pivoting) -> Option<Reduced<S>> {
    let nlines = lines.len();
    let mut alive = vec![true; nlines];
    let mut col_lines: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut count = vec![0u32; ncols];
    for (i, line) in lines.iter().enumerate() {
        for &(c, _) in line {
            col_lines[c as usize].push(i as u32);
            count[c as usize] += 1;
        }
    }

    let mut done = vec![false; ncols];
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
        (0..ncols).filter(|&c| count[c] > 0).map(|c| Reverse((count[c], c as u32))).collect();
    let mut pivots = Vec::new();
    let mut positions = Vec::new();
    let mut deferred: Vec<u32> = Vec::new();
    let mut touched: Vec<u32> = Vec::new();
    let mut cands: Vec<u32> = Vec::new();
    let mut scratch: Line<S> = Vec::new();

    loop {
        let pivots_before = pivots.len();
        while let Some(Reverse((cnt, c))) = heap.pop() {
            let cu = c as usize;
            if done[cu] || count[cu] != cnt {
                continue;
            }
            if cnt == 0 {
                done[cu] = true;
                continue;
            }

            cands.clear();
            cands.extend(
                col_lines[cu]
                    .iter()
                    .copied()
                    .filter(|&i| alive[i as usize] && lines[i as usize].binary_search_by_key(&c, |e| e.0).is_ok()),
            );
            cands.sort_unstable();
            cands.dedup();
            col_lines[cu].clone_from(&cands);

            let value_in = |lines: &[Line<S>], i: u32| -> S {
                let l = &lines[i as usize];
                l[l.binary_search_by_key(&c, |e| e.0).unwrap()].1.clone()
            };

            let Some(r) = choose_pivot(&lines, &cands, c, pivoting) else {
                done[cu] = true;
                deferred.push(c);
                continue;
            };
            let p = value_in(&lines, r);
            let pivot_line = std::mem::take(&mut lines[r as usize]);
            alive[r as usize] = false;
            touched.clear();

            for &i in cands.iter().filter(|&&i| i != r) {
                let a = value_in(&lines, i);
                let (mx, my) = if pivoting == Pivoting::Divisor || p.is_unit() {
                    (S::unit(), S::exact_quotient(&a, &p)?)
                } else {
                    (p.clone(), a)
                };
                let line = std::mem::take(&mut lines[i as usize]);
                scratch.clear();
                merge(&line, &mx, &pivot_line, &my, &mut scratch, |j, filled| {
                    if filled {
                        col_lines[j as usize].push(i);
                        count[j as usize] += 1;
                    } else {
                        count[j as usize] -= 1;
                    }
                    touched.push(j);
                })?;
                if pivoting == Pivoting::Any && !p.is_unit() {
                    S::remove_content(&mut scratch);
                }
                lines[i as usize] = std::mem::replace(&mut scratch, line);
            }
            for &(j, _) in &pivot_line {
                count[j as usize] -= 1;
                touched.push(j);
            }
            done[cu] = true;
            pivots.push(p);
            positions.push((c, r));
            for &j in &touched {
                if !done[j as usize] {
                    heap.push(Reverse((count[j as usize], j)));
                }
            }
        }
        // A deferred column may have become pivotable after later updates.
        if deferred.is_empty() || pivots.len() == pivots_before {
            break;
        }
        for c in deferred.drain(..) {
            let cu = c as usize;
            done[cu] = false;
            heap.push(Reverse((count[cu], c)));
        }
    }

    let remainder = lines.into_iter().zip(alive).filter(|(l, a)| *a && !l.is_empty()).map(|(l, _)| l).collect();
    Some(Reduced { pivots, positions, remainder })
}

fn choose_pivot<S: Scalar>(lines: &[Line<S>], cands: &[u32], c: u32, pivoting: Pivoting) -> Option<u32> {
    let value = |i: u32| {
        let l = &lines[i as usize];
        &l[l.binary_search_by_key(&c, |e| e.0).unwrap()].1
    };
    let best_unit = cands.iter().copied().filter(|&i| value(i).is_unit()).min_by_key(|&i| (lines[i as usize].len(), i));
    if best_unit.is_some() {
        return best_unit;
    }
    let mut order: Vec<u32> = cands.to_vec();
    order.sort_by_key(|&i| (value(i).magnitude(), lines[i as usize].len(), i));
    match pivoting {
        Pivoting::Any => order.first().copied(),
        Pivoting::Divisor => order.into_iter().find(|&i| {
            let p = value(i);
            cands.iter().all(|&k| S::divides(p, value(k))) && lines[i as usize].iter().all(|(_, v)| S::divides(p, v))
        }),
    }
}

/// `out = mx * x - my * y`, reporting every column whose occupancy in the
/// line changes (`true` for fill-in, `false` for cancellation).
fn merge<S: Scalar>(
    x: &[(u32, S)],
    mx: &S,
    y: &[(u32, S)],
    my: &S,
    out: &mut Line<S>,
    mut changed: impl FnMut(u32, bool),
) -> Option<()> {
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, S::scale(&x[i].1, mx)?));
            i += 1;
        } else if take_y {
            let v = S::neg_scale(&y[j].1, my)?;
            if !v.vanishes() {
                out.push((y[j].0, v));
                changed(y[j].0, true);
            }
            j += 1;
        } else {
            let v = S::mul_sub(&x[i].1, mx, &y[j].1, my)?;
            if v.vanishes() {
                changed(x[i].0, false);
            } else {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(())
}
