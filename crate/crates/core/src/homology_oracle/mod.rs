//! Simplicial homology computed from first principles, and the quadric
//! complexes it is run on. Nothing here consults the closed forms.

mod chain;
mod induced;
mod quadric;
mod rational_dense;

pub use chain::ChainComplexZ;
pub use induced::induced_map_on_homology;
pub use quadric::{build_q, build_x, default_cap, rational_q_via_invariants, QuotientBuild, CAP_ENV, DEFAULT_CAP};

use serde::Serialize;

use crate::error::Result;
use crate::graded::{Coeff, GradedHomology};
use crate::simplicial::SimplicialComplex;

/// Homology of one complex together with its size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub homology: GradedHomology,
    pub f_vector: Vec<usize>,
    pub build_trace: String,
}

impl OracleResult {
    pub fn euler_characteristic(&self) -> i64 {
        crate::simplicial::alternating_sum(&self.f_vector)
    }
}

pub fn homology_of_complex(c: &SimplicialComplex, coeff: Coeff) -> Result<OracleResult> {
    let chain = ChainComplexZ::new(c);
    Ok(OracleResult {
        homology: chain.homology(coeff)?,
        f_vector: chain.f_vector(),
        build_trace: c.trace().to_string(),
    })
}

/// Homology over several coefficient rings, sharing one chain complex.
pub fn homology_of_complex_multi(c: &SimplicialComplex, coeffs: &[Coeff]) -> Result<Vec<OracleResult>> {
    let chain = ChainComplexZ::new(c);
    coeffs
        .iter()
        .map(|&coeff| {
            Ok(OracleResult {
                homology: chain.homology(coeff)?,
                f_vector: chain.f_vector(),
                build_trace: c.trace().to_string(),
            })
        })
        .collect()
}
