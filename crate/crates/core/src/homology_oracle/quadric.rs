use std::sync::Arc;

use super::induced::induced_map_on_homology;
use crate::closed_forms::QuadricSignature;
use crate::error::{Error, Result};
use crate::graded::{Coeff, GradedHomology};
use crate::join_theory::invariant_subgroup;
use crate::simplicial::{
    barycentric_subdivide, induced_involution, join, product, quotient_by_involution, sphere, subdivided_face_count,
    SimplicialComplex, SimplicialMap, SphereModel,
};

/// Environment variable holding the default simplex budget for `build_q`.
pub const CAP_ENV: &str = "QUADHOM_ORACLE_CAP";
pub const DEFAULT_CAP: u64 = 5_000_000;

/// Cap from the environment, falling back to [`DEFAULT_CAP`].
pub fn default_cap() -> u64 {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// Most subdivisions `build_q` will try before giving up.
const MAX_SUBDIVISIONS: usize = 2;

fn sphere_or_empty(k: isize) -> SimplicialComplex {
    if k < 0 {
        SimplicialComplex::from_facets(Vec::new(), "∅")
    } else {
        sphere(k as usize, SphereModel::CrossPolytope)
    }
}

/// `(S^{p−1} × S^{q−1}) ⋆ S^{n−p−q−1}` on cross-polytope spheres, with its
/// antipodal involution. A sphere of dimension −1 is empty, so this also
/// covers non-degenerate and exploratory signatures.
pub fn build_x(sig: &QuadricSignature) -> Result<(Arc<SimplicialComplex>, SimplicialMap)> {
    let (p, q, n) = (sig.p() as isize, sig.q() as isize, sig.n() as isize);
    let base = product(&sphere_or_empty(p - 1), &sphere_or_empty(q - 1));
    let c = Arc::new(join(&base, &sphere_or_empty(n - p - q - 1)));
    let t = induced_involution(&c)?;
    Ok((c, t))
}

/// A triangulation of the quadric as an orbit complex.
#[derive(Debug, Clone)]
pub struct QuotientBuild {
    pub quotient: Arc<SimplicialComplex>,
    /// The (subdivided) cover the quotient was taken from.
    pub cover: Arc<SimplicialComplex>,
    pub involution: SimplicialMap,
    /// Barycentric subdivisions that were needed for a regular action.
    pub subdivisions: usize,
}

/// Subdivides the cover until the antipode acts regularly, then takes the
/// orbit complex. Refuses when a subdivision would exceed `cap` simplices.
pub fn build_q(sig: &QuadricSignature, cap: u64) -> Result<QuotientBuild> {
    let (mut cover, mut t) = build_x(sig)?;
    for subdivisions in 0..=MAX_SUBDIVISIONS {
        match quotient_by_involution(&cover, &t) {
            Ok(q) => return Ok(QuotientBuild { quotient: Arc::new(q), cover, involution: t, subdivisions }),
            Err(Error::NotRegular(_)) if subdivisions < MAX_SUBDIVISIONS => {}
            Err(Error::NotRegular(_)) => break,
            Err(e) => return Err(e),
        }
        let estimated = subdivided_face_count(&cover.faces());
        if estimated > u128::from(cap) {
            return Err(Error::Infeasible { estimated: u64::try_from(estimated).unwrap_or(u64::MAX), cap });
        }
        cover = Arc::new(barycentric_subdivide(&cover));
        t = induced_involution(&cover)?;
    }
    Err(Error::RegularityUnreachable(MAX_SUBDIVISIONS))
}

/// `H_*(Q; ℚ)` as the antipode invariants of the oracle homology of the
/// cover; no quotient complex is built.
pub fn rational_q_via_invariants(sig: &QuadricSignature) -> Result<GradedHomology> {
    let (c, t) = build_x(sig)?;
    invariant_subgroup(&induced_map_on_homology(&c, &t, Coeff::Rational)?)
}
