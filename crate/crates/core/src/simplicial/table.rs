use rayon::prelude::*;

/// All simplices of one dimension, as rows of sorted vertex indices in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplexTable {
    width: usize,
    data: Vec<u32>,
}

impl SimplexTable {
    /// Sorts and deduplicates the rows of `data`. Each row must already be
    /// sorted.
    pub(crate) fn from_rows(width: usize, data: Vec<u32>) -> Self {
        assert!(width > 0 && data.len().is_multiple_of(width));
        let n = data.len() / width;
        let row = |i: u32| &data[i as usize * width..][..width];
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.par_sort_unstable_by(|&a, &b| row(a).cmp(row(b)));
        order.dedup_by(|a, b| row(*a) == row(*b));
        let mut out = Vec::with_capacity(order.len() * width);
        for i in order {
            out.extend_from_slice(row(i));
        }
        Self { width, data: out }
    }

    /// Number of vertices per simplex.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.width - 1
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.width..][..self.width]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.data.chunks_exact(self.width.max(1))
    }

    pub fn position(&self, simplex: &[u32]) -> Option<usize> {
        debug_assert_eq!(simplex.len(), self.width);
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(simplex) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.position(simplex).is_some()
    }

    /// Rows obtained by dropping one vertex from each row, unsorted.
    pub(crate) fn boundary_rows(&self) -> Vec<u32> {
        let w = self.width;
        let mut out = Vec::with_capacity(self.len() * w * (w - 1));
        for row in self.iter() {
            for skip in 0..w {
                out.extend(row.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            }
        }
        out
    }
}
