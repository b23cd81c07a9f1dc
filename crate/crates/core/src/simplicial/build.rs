use std::collections::HashMap;
use std::sync::Arc;

use super::{Label, SimplexTable, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

/// Triangulation used for a sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereModel {
    /// Boundary of the cross-polytope; negation of labels is the antipode.
    CrossPolytope,
    /// Boundary of the `(k+1)`-simplex.
    SimplexBoundary,
}

pub fn sphere(k: usize, model: SphereModel) -> SimplicialComplex {
    match model {
        SphereModel::CrossPolytope => {
            let vertices =
                (0..=k as u32).flat_map(|axis| [false, true].map(|neg| Label::Cross { axis, neg })).collect();
            let facets = (0u64..1 << (k + 1))
                .map(|mask| (0..=k as u32).map(|i| 2 * i + ((mask >> i) & 1) as u32).collect())
                .collect();
            SimplicialComplex::from_parts(vertices, facets, format!("S^{k}"))
        }
        SphereModel::SimplexBoundary => {
            let n = k as u32 + 2;
            let vertices = (0..n).map(Label::Vertex).collect();
            let facets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
            SimplicialComplex::from_parts(vertices, facets, format!("∂Δ^{}", k + 1))
        }
    }
}

/// `m` isolated points.
pub fn points(m: usize) -> SimplicialComplex {
    let vertices = (0..m as u32).map(Label::Point).collect();
    let facets = (0..m as u32).map(|v| vec![v]).collect();
    SimplicialComplex::from_parts(vertices, facets, format!("{m} points"))
}

/// Staircase triangulation of `|a| × |b|`.
///
/// Both factors are ordered by their vertex label order. Each pair of facets
/// `σ × τ` contributes one top simplex per monotone lattice path through
/// the grid of vertex pairs.
pub fn product(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let nb = b.vertex_count() as u32;
    let vertices = a
        .vertices()
        .iter()
        .flat_map(|la| b.vertices().iter().map(move |lb| Label::pair(la.clone(), lb.clone())))
        .collect();
    let mut facets = Vec::new();
    let mut path = Vec::new();
    for s in a.facets() {
        for t in b.facets() {
            staircases(s, t, 0, 0, nb, &mut path, &mut facets);
        }
    }
    SimplicialComplex::from_parts(vertices, facets, format!("({} × {})", a.trace(), b.trace()))
}

fn staircases(s: &[u32], t: &[u32], i: usize, j: usize, nb: u32, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    path.push(s[i] * nb + t[j]);
    if i + 1 == s.len() && j + 1 == t.len() {
        out.push(path.clone());
    }
    if i + 1 < s.len() {
        staircases(s, t, i + 1, j, nb, path, out);
    }
    if j + 1 < t.len() {
        staircases(s, t, i, j + 1, nb, path, out);
    }
    path.pop();
}

/// Simplicial join: every facet of `a` united with every facet of `b`.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let na = a.vertex_count() as u32;
    let vertices = a
        .vertices()
        .iter()
        .map(|l| Label::Left(Box::new(l.clone())))
        .chain(b.vertices().iter().map(|l| Label::Right(Box::new(l.clone()))))
        .collect();
    let shifted = |t: &[u32]| t.iter().map(|&v| v + na).collect::<Vec<_>>();
    let facets = if a.facets().is_empty() {
        b.facets().iter().map(|t| shifted(t)).collect()
    } else if b.facets().is_empty() {
        a.facets().to_vec()
    } else {
        a.facets()
            .iter()
            .flat_map(|s| b.facets().iter().map(move |t| s.iter().copied().chain(shifted(t)).collect()))
            .collect()
    };
    SimplicialComplex::from_parts(vertices, facets, format!("({} ⋆ {})", a.trace(), b.trace()))
}

/// Barycentric subdivision: one vertex per simplex, one facet per maximal
/// chain of simplices.
pub fn barycentric_subdivide(a: &SimplicialComplex) -> SimplicialComplex {
    let mut simplices: Vec<Vec<u32>> = a.faces().iter().flat_map(|t| t.iter().map(<[u32]>::to_vec)).collect();
    // Lexicographic order on index lists agrees with the label order of
    // the resulting `Label::Simplex` vertices.
    simplices.sort_unstable();
    let index: HashMap<&[u32], u32> = simplices.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();
    let mut facets = Vec::new();
    let mut chosen = Vec::new();
    let mut chain = Vec::new();
    for f in a.facets() {
        flags(f, &index, &mut chosen, &mut chain, &mut facets);
    }
    let vertices = simplices.iter().map(|s| Label::Simplex(s.iter().map(|&v| a.label(v).clone()).collect())).collect();
    SimplicialComplex::from_parts(vertices, facets, format!("sd{}", a.trace()))
}

fn flags(
    facet: &[u32],
    index: &HashMap<&[u32], u32>,
    chosen: &mut Vec<u32>,
    chain: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if chosen.len() == facet.len() {
        let mut f = chain.clone();
        f.sort_unstable();
        out.push(f);
        return;
    }
    for &v in facet {
        if chosen.contains(&v) {
            continue;
        }
        chosen.push(v);
        let mut key = chosen.clone();
        key.sort_unstable();
        chain.push(index[key.as_slice()]);
        flags(facet, index, chosen, chain, out);
        chain.pop();
        chosen.pop();
    }
}

/// Number of simplices (all dimensions) the barycentric subdivision of `a`
/// would have: a `k`-simplex carries one chain per ordered set partition of
/// its `k+1` vertices.
pub fn subdivided_face_count(faces: &[SimplexTable]) -> u128 {
    let max_width = faces.iter().map(SimplexTable::width).max().unwrap_or(0);
    let fubini = fubini_numbers(max_width);
    faces.iter().map(|t| t.len() as u128 * fubini[t.width()]).sum()
}

fn fubini_numbers(n: usize) -> Vec<u128> {
    let mut binom = vec![vec![1u128]];
    for i in 1..=n {
        let prev = &binom[i - 1];
        let row = (0..=i).map(|k| if k == 0 || k == i { 1 } else { prev[k - 1] + prev[k] }).collect();
        binom.push(row);
    }
    let mut a = vec![1u128];
    for m in 1..=n {
        a.push((1..=m).map(|k| binom[m][k] * a[m - k]).sum());
    }
    a
}

/// Orbit complex of a free involution.
///
/// Requires that no edge joins a vertex to its image and that `{u, v}` and
/// `{u, t(v)}` are never both edges. Under these conditions the orbit map
/// is injective on simplices and two simplices share an image only when
/// they are swapped by `t`, so the result triangulates `|a| / t`.
pub fn quotient_by_involution(a: &SimplicialComplex, t: &SimplicialMap) -> Result<SimplicialComplex> {
    if !(std::ptr::eq(a, t.domain().as_ref()) || a == t.domain().as_ref()) {
        return Err(Error::DimensionMismatch("involution is defined on a different complex".into()));
    }
    if !t.is_involution() {
        return Err(Error::NotInvolution("vertex map does not square to the identity".into()));
    }
    if let Some(v) = t.fixed_vertices().next() {
        return Err(Error::NotFree(a.label(v).to_string()));
    }
    let mut edge_rows = Vec::new();
    for f in a.facets() {
        for (i, &u) in f.iter().enumerate() {
            for &v in &f[i + 1..] {
                edge_rows.extend([u, v]);
            }
        }
    }
    if !edge_rows.is_empty() {
        let edges = SimplexTable::from_rows(2, edge_rows);
        let is_edge = |x: u32, y: u32| edges.contains(&[x.min(y), x.max(y)]);
        for e in edges.iter() {
            let (u, v) = (e[0], e[1]);
            if t.image(u) == v {
                return Err(Error::NotRegular(format!("edge joins {} to its image", a.label(u))));
            }
            if is_edge(u, t.image(v)) || is_edge(v, t.image(u)) {
                return Err(Error::NotRegular(format!(
                    "edges {{{0}, {1}}} and {{{0}, t({1})}} have the same orbit image",
                    a.label(u),
                    a.label(v)
                )));
            }
        }
    }

    let mut orbit = vec![0u32; a.vertex_count()];
    let mut vertices = Vec::with_capacity(a.vertex_count() / 2);
    for v in 0..a.vertex_count() as u32 {
        let w = t.image(v);
        if v < w {
            orbit[v as usize] = vertices.len() as u32;
            orbit[w as usize] = vertices.len() as u32;
            vertices.push(Label::Orbit(Box::new(a.label(v).clone())));
        }
    }
    let facets = a
        .facets()
        .iter()
        .map(|f| {
            let mut g: Vec<u32> = f.iter().map(|&v| orbit[v as usize]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    Ok(SimplicialComplex::from_parts(vertices, facets, format!("{}/±", a.trace())))
}

/// The antipodal involution of a complex assembled from cross-polytope
/// spheres by products, joins and subdivisions, read off the vertex labels.
pub fn induced_involution(a: &Arc<SimplicialComplex>) -> Result<SimplicialMap> {
    if let Some(what) = a.vertices().iter().find_map(Label::antipode_obstruction) {
        return Err(Error::UnsupportedModel(what.into()));
    }
    SimplicialMap::from_labels(a.clone(), a.clone(), Label::negated)
}
