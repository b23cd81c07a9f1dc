//! Abstract simplicial complexes with structured vertex labels, and the
//! constructions used to triangulate the double cover and its quotient.
//!
//! Vertices are kept sorted by label, so a vertex index order is the label
//! order. Every simplex is a sorted list of indices; orientations follow
//! that order.

mod build;
mod io;
mod label;
mod table;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

pub use build::{
    barycentric_subdivide, induced_involution, join, points, product, quotient_by_involution, sphere,
    subdivided_face_count, SphereModel,
};
pub use io::{read_facets, write_facets};
pub use label::Label;
pub use table::SimplexTable;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Label>,
    facets: Vec<Vec<u32>>,
    trace: String,
}

impl SimplicialComplex {
    /// Builds a complex from facets given by labels. Repeated vertices
    /// inside a facet are merged and facets contained in other facets are
    /// dropped.
    pub fn from_facets(facets: impl IntoIterator<Item = Vec<Label>>, trace: impl Into<String>) -> Self {
        let facets: Vec<Vec<Label>> = facets.into_iter().filter(|f| !f.is_empty()).collect();
        let mut vertices: Vec<Label> = facets.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let index: HashMap<&Label, u32> = vertices.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
        let mut rows: Vec<Vec<u32>> = facets
            .iter()
            .map(|f| {
                let mut r: Vec<u32> = f.iter().map(|l| index[l]).collect();
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect();
        drop(index);
        rows.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        rows.dedup();
        let mut kept: Vec<Vec<u32>> = Vec::new();
        let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
        for r in rows {
            let covered = incidence[r[0] as usize].iter().any(|&k| is_subset(&r, &kept[k as usize]));
            if !covered {
                for &v in &r {
                    incidence[v as usize].push(kept.len() as u32);
                }
                kept.push(r);
            }
        }
        kept.sort();
        Self { vertices, facets: kept, trace: trace.into() }
    }

    /// Caller guarantees sorted unique vertices, sorted maximal facets.
    pub(crate) fn from_parts(vertices: Vec<Label>, mut facets: Vec<Vec<u32>>, trace: String) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        facets.sort_unstable();
        facets.dedup();
        Self { vertices, facets, trace }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn label(&self, v: u32) -> &Label {
        &self.vertices[v as usize]
    }

    pub fn index_of(&self, label: &Label) -> Option<u32> {
        self.vertices.binary_search(label).ok().map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> impl Iterator<Item = Vec<&Label>> + '_ {
        self.facets.iter().map(|f| f.iter().map(|&v| self.label(v)).collect())
    }

    /// Description of how the complex was assembled.
    pub fn trace(&self) -> &str {
        &self.trace
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// All simplices, grouped by dimension (entry `k` holds the
    /// `k`-simplices).
    pub fn faces(&self) -> Vec<SimplexTable> {
        let Some(top) = self.dim() else { return Vec::new() };
        let mut tables: Vec<SimplexTable> = Vec::with_capacity(top + 1);
        let mut from_above: Vec<u32> = Vec::new();
        for k in (0..=top).rev() {
            let mut rows = std::mem::take(&mut from_above);
            for f in self.facets.iter().filter(|f| f.len() == k + 1) {
                rows.extend_from_slice(f);
            }
            let t = SimplexTable::from_rows(k + 1, rows);
            if k > 0 {
                from_above = t.boundary_rows();
            }
            tables.push(t);
        }
        tables.reverse();
        tables
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(SimplexTable::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// Answers "is this vertex set a simplex?" queries.
    pub fn simplex_oracle(&self) -> SimplexOracle<'_> {
        let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); self.vertices.len()];
        for (k, f) in self.facets.iter().enumerate() {
            for &v in f {
                incidence[v as usize].push(k as u32);
            }
        }
        SimplexOracle { complex: self, facets: self.facets.iter().map(Vec::as_slice).collect(), incidence }
    }
}

pub struct SimplexOracle<'a> {
    complex: &'a SimplicialComplex,
    facets: HashSet<&'a [u32]>,
    incidence: Vec<Vec<u32>>,
}

impl SimplexOracle<'_> {
    /// `simplex` must be sorted and duplicate-free.
    pub fn contains(&self, simplex: &[u32]) -> bool {
        let Some(&first) = simplex.first() else { return true };
        if self.facets.contains(simplex) {
            return true;
        }
        self.incidence
            .get(first as usize)
            .is_some_and(|fs| fs.iter().any(|&k| is_subset(simplex, &self.complex.facets[k as usize])))
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

pub(crate) fn alternating_sum(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

/// A vertex map between complexes that sends simplices to simplices.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    vertex_map: Vec<u32>,
}

impl SimplicialMap {
    pub fn new(domain: Arc<SimplicialComplex>, codomain: Arc<SimplicialComplex>, vertex_map: Vec<u32>) -> Result<Self> {
        if vertex_map.len() != domain.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                domain.vertex_count()
            )));
        }
        if let Some(&bad) = vertex_map.iter().find(|&&w| w as usize >= codomain.vertex_count()) {
            return Err(Error::NotSimplicial(format!("vertex index {bad} outside codomain")));
        }
        let oracle = codomain.simplex_oracle();
        let mut image = Vec::new();
        for f in domain.facets() {
            image.clear();
            image.extend(f.iter().map(|&v| vertex_map[v as usize]));
            image.sort_unstable();
            image.dedup();
            if !oracle.contains(&image) {
                let labels: Vec<String> = f.iter().map(|&v| domain.label(v).to_string()).collect();
                return Err(Error::NotSimplicial(format!("image of facet {{{}}} is not a simplex", labels.join(" "))));
            }
        }
        drop(oracle);
        Ok(Self { domain, codomain, vertex_map })
    }

    /// Builds a map from a label function.
    pub fn from_labels(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        f: impl Fn(&Label) -> Option<Label>,
    ) -> Result<Self> {
        let vertex_map = domain
            .vertices()
            .iter()
            .map(|l| {
                f(l).and_then(|img| codomain.index_of(&img))
                    .ok_or_else(|| Error::NotSimplicial(format!("vertex {l} has no image in the codomain")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, vertex_map)
    }

    pub fn identity(c: Arc<SimplicialComplex>) -> Self {
        let vertex_map = (0..c.vertex_count() as u32).collect();
        Self { domain: c.clone(), codomain: c, vertex_map }
    }

    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[u32] {
        &self.vertex_map
    }

    pub fn image(&self, v: u32) -> u32 {
        self.vertex_map[v as usize]
    }

    pub fn is_self_map(&self) -> bool {
        Arc::ptr_eq(&self.domain, &self.codomain) || self.domain == self.codomain
    }

    pub fn is_involution(&self) -> bool {
        self.is_self_map() && self.vertex_map.iter().enumerate().all(|(v, &w)| self.image(w) as usize == v)
    }

    pub fn fixed_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.vertex_map.len() as u32).filter(|&v| self.image(v) == v)
    }

    /// Image of an oriented simplex: the sorted image and the sign of the
    /// sorting permutation, or `None` if two vertices collapse.
    pub fn apply_oriented(&self, simplex: &[u32], out: &mut Vec<u32>) -> Option<i8> {
        out.clear();
        out.extend(simplex.iter().map(|&v| self.image(v)));
        let mut sign = 1i8;
        // Insertion sort, counting transpositions; simplices are short.
        for i in 1..out.len() {
            let mut j = i;
            while j > 0 && out[j - 1] > out[j] {
                out.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if out.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(sign)
    }
}
