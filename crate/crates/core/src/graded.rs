//! Finitely generated abelian groups and graded homology values.
//!
//! Torsion is kept in invariant-factor form `d_1 | d_2 | ... | d_t`, which is
//! exactly what a Smith normal form hands back.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a homology computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coeff {
    #[serde(rename = "z")]
    Integer,
    #[serde(rename = "q")]
    Rational,
    #[serde(rename = "z2")]
    Mod2,
}

impl Coeff {
    pub fn is_field(self) -> bool {
        !matches!(self, Coeff::Integer)
    }

    /// Short name used by the CLI flags and JSON output.
    pub fn tag(self) -> &'static str {
        match self {
            Coeff::Integer => "z",
            Coeff::Rational => "q",
            Coeff::Mod2 => "z2",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "z" => Some(Coeff::Integer),
            "q" => Some(Coeff::Rational),
            "z2" => Some(Coeff::Mod2),
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coeff::Integer => "ℤ",
            Coeff::Rational => "ℚ",
            Coeff::Mod2 => "ℤ/2",
        })
    }
}

/// `ℤ^rank ⊕ ℤ/d_1 ⊕ ... ⊕ ℤ/d_t` with `d_i ≥ 2` and `d_i | d_{i+1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds a group from any list of cyclic orders and brings it to
    /// invariant-factor form. Orders of 1 vanish; an order of 0 is a free
    /// summand.
    pub fn new(free_rank: usize, cyclic_orders: impl IntoIterator<Item = u64>) -> Self {
        let mut rank = free_rank;
        let mut orders = Vec::new();
        for d in cyclic_orders {
            match d {
                0 => rank += 1,
                1 => {}
                d => orders.push(d),
            }
        }
        Self { free_rank: rank, torsion: invariant_factors(orders) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Re-normalizes; a no-op for values built through the constructors.
    pub fn normalized(&self) -> Self {
        Self::new(self.free_rank, self.torsion.iter().copied())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.free_rank + other.free_rank, self.torsion.iter().chain(other.torsion.iter()).copied())
    }

    /// Number of ℤ/2 summands after reducing every cyclic factor mod 2,
    /// i.e. `dim (G ⊗ ℤ/2) - rank`.
    pub fn even_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|d| *d % 2 == 0).count()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&e| e == d).count();
            if run == 1 {
                parts.push(format!("ℤ/{d}"));
            } else {
                parts.push(format!("(ℤ/{d})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

#[derive(Deserialize)]
struct RawGroup {
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGroup::deserialize(d)?;
        Ok(FgAbelianGroup::new(raw.rank, raw.torsion))
    }
}

/// Pairwise gcd/lcm sweep: after processing index `i` against every later
/// index, `d_i` divides everything after it.
fn invariant_factors(mut orders: Vec<u64>) -> Vec<u64> {
    let len = orders.len();
    for i in 0..len {
        for j in i + 1..len {
            let (a, b) = (orders[i], orders[j]);
            let g = a.gcd(&b);
            orders[i] = g;
            orders[j] = a / g * b;
        }
    }
    orders.retain(|&d| d != 1);
    orders
}

/// Homology of one space in every degree, for a fixed coefficient ring.
///
/// Only nonzero degrees are stored; `get` on a missing degree returns the
/// zero group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedHomology {
    coeff: Coeff,
    groups: BTreeMap<usize, FgAbelianGroup>,
}

static ZERO_GROUP: FgAbelianGroup = FgAbelianGroup { free_rank: 0, torsion: Vec::new() };

impl GradedHomology {
    pub fn zero(coeff: Coeff) -> Self {
        Self { coeff, groups: BTreeMap::new() }
    }

    pub fn new(coeff: Coeff, groups: impl IntoIterator<Item = (usize, FgAbelianGroup)>) -> Result<Self> {
        let mut out = Self::zero(coeff);
        for (k, g) in groups {
            out.add(k, g)?;
        }
        Ok(out)
    }

    /// Free (vector-space) groups with the given ranks per degree.
    pub fn from_ranks(coeff: Coeff, ranks: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = Self::zero(coeff);
        for (k, r) in ranks {
            out.add(k, FgAbelianGroup::free(r)).expect("free groups never carry torsion");
        }
        out
    }

    /// Ranks listed densely from degree 0.
    pub fn from_rank_list(coeff: Coeff, ranks: &[usize]) -> Self {
        Self::from_ranks(coeff, ranks.iter().copied().enumerate())
    }

    /// Adds `g` as a direct summand in degree `k`.
    pub fn add(&mut self, k: usize, g: FgAbelianGroup) -> Result<()> {
        if self.coeff.is_field() && !g.is_free() {
            return Err(Error::TorsionWithFieldCoefficients { degree: k });
        }
        if g.is_zero() {
            return Ok(());
        }
        let slot = self.groups.entry(k).or_default();
        *slot = slot.direct_sum(&g);
        Ok(())
    }

    pub fn coeff(&self) -> Coeff {
        self.coeff
    }

    pub fn get(&self, k: usize) -> &FgAbelianGroup {
        self.groups.get(&k).unwrap_or(&ZERO_GROUP)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.get(k).free_rank()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &FgAbelianGroup)> {
        self.groups.iter().map(|(k, g)| (*k, g))
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.groups.keys().copied()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.groups.keys().next_back().copied()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.values().all(FgAbelianGroup::is_free)
    }

    /// First degree carrying torsion, if any.
    pub fn torsion_degree(&self) -> Option<usize> {
        self.groups.iter().find(|(_, g)| !g.is_free()).map(|(k, _)| *k)
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|(k, g)| if k % 2 == 0 { g.free_rank() as i64 } else { -(g.free_rank() as i64) }).sum()
    }

    /// Ranks as a dense vector `[rank_0, ..., rank_top]`.
    pub fn rank_vector(&self) -> Vec<usize> {
        match self.top_degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|k| self.rank(k)).collect(),
        }
    }

    /// Same groups, relabelled with another coefficient tag.
    pub fn with_coeff(&self, coeff: Coeff) -> Result<Self> {
        Self::new(coeff, self.groups.iter().map(|(k, g)| (*k, g.clone())))
    }
}

impl fmt::Display for GradedHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .groups
            .iter()
            .map(|(k, g)| {
                let g = if self.coeff.is_field() {
                    match g.free_rank() {
                        1 => self.coeff.to_string(),
                        r => format!("{}^{r}", self.coeff),
                    }
                } else {
                    g.to_string()
                };
                format!("{k}: {g}")
            })
            .collect();
        write!(f, "{{{}}}", body.join(", "))
    }
}

#[derive(Deserialize)]
struct RawGraded {
    coeff: Coeff,
    groups: BTreeMap<usize, FgAbelianGroup>,
}

impl<'de> Deserialize<'de> for GradedHomology {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraded::deserialize(d)?;
        GradedHomology::new(raw.coeff, raw.groups).map_err(serde::de::Error::custom)
    }
}

/// Homology together with the number of path components, which fixes the
/// kernel of the augmentation `H_0(Z) → H_0(cone Z) = ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedGradedHomology {
    homology: GradedHomology,
    component_count: usize,
}

impl PointedGradedHomology {
    pub fn new(homology: GradedHomology, component_count: usize) -> Result<Self> {
        if component_count == 0 {
            return Err(Error::DimensionMismatch("component count must be positive".into()));
        }
        if homology.coeff() == Coeff::Integer && homology.rank(0) != component_count {
            return Err(Error::DimensionMismatch(format!(
                "H_0 has rank {} but {} components were given",
                homology.rank(0),
                component_count
            )));
        }
        Ok(Self { homology, component_count })
    }

    /// Reads the component count off `H_0`.
    pub fn from_homology(homology: GradedHomology) -> Result<Self> {
        let c = homology.rank(0);
        Self::new(homology, c)
    }

    pub fn homology(&self) -> &GradedHomology {
        &self.homology
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }
}

/// `⊕_{i+j=k} h1_i ⊗ h2_j` for torsion-free graded groups.
pub fn tensor_degree(h1: &GradedHomology, h2: &GradedHomology, k: usize) -> Result<FgAbelianGroup> {
    for h in [h1, h2] {
        if let Some(degree) = h.torsion_degree() {
            return Err(Error::TorsionPresent { degree });
        }
    }
    let rank = (0..=k).map(|i| h1.rank(i) * h2.rank(k - i)).sum();
    Ok(FgAbelianGroup::free(rank))
}

/// Full tensor product of two torsion-free graded groups (the Künneth value
/// of a product space).
pub fn tensor(h1: &GradedHomology, h2: &GradedHomology) -> Result<GradedHomology> {
    let top = h1.top_degree().unwrap_or(0) + h2.top_degree().unwrap_or(0);
    let mut out = GradedHomology::zero(h1.coeff());
    for k in 0..=top {
        out.add(k, tensor_degree(h1, h2, k)?)?;
    }
    Ok(out)
}

/// Kernel of `H_*(Z) → H_*(cone Z)`: reduced `H_0` plus every higher degree.
pub fn augmentation_kernel(h: &PointedGradedHomology) -> GradedHomology {
    let src = h.homology();
    let mut out = GradedHomology::zero(src.coeff());
    for (k, g) in src.iter() {
        if k == 0 {
            let reduced = FgAbelianGroup::new(g.free_rank().saturating_sub(1), g.torsion().iter().copied());
            out.add(0, reduced).expect("same coefficient ring");
        } else {
            out.add(k, g.clone()).expect("same coefficient ring");
        }
    }
    out
}
