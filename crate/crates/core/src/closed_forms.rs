//! Closed-form homology of the degenerate quadric `Q_{p,q}^n` and of its
//! double cover `X_{p,q}^n ≅ (S^{p−1} × S^{q−1}) ⋆ S^{n−p−q−1}`.
//!
//! Every formula is symmetric in `p` and `q`; signatures are normalized to
//! `q ≥ p` before dispatch.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{Coeff, FgAbelianGroup, GradedHomology, PointedGradedHomology};
use crate::join_theory::{
    invariant_subgroup, join_homology, join_induced_map, product_homology, product_map, sphere_antipode,
    sphere_homology, GradedMap,
};

/// The triple `(p, q, n)`: `p` positive and `q` negative squares in `n`
/// variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadricSignature {
    p: usize,
    q: usize,
    n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignatureClass {
    /// `n = p + q`.
    NonDegenerate,
    /// `n > p + q`.
    Degenerate,
}

impl QuadricSignature {
    /// Requires `p, q ≥ 1` and `n ≥ p + q`. A zero `p` or `q` is answered
    /// with the projective space (or empty set) the quadric reduces to.
    pub fn new(p: usize, q: usize, n: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            let nonzero = p + q;
            let msg = if n < nonzero {
                format!("p={p}, q={q}, n={n}: n must be at least p + q")
            } else if n == nonzero {
                format!("p={p}, q={q}, n={n}: the quadric is empty (a definite form has no real zeros)")
            } else {
                format!(
                    "p={p}, q={q}, n={n}: the quadric is the projective space ℝP^{}; use the homology of real projective space",
                    n - nonzero - 1
                )
            };
            return Err(Error::ProjectiveSpaceReferral(msg));
        }
        if n < p + q {
            return Err(Error::InvalidSignature { p, q, n, reason: "n must be at least p + q".into() });
        }
        Ok(Self { p, q, n })
    }

    /// Like [`QuadricSignature::new`] but also admits `p = 0` or `q = 0`,
    /// for oracle computations only.
    pub fn exploratory(p: usize, q: usize, n: usize) -> Result<Self> {
        if n < p + q || n == 0 {
            return Err(Error::InvalidSignature { p, q, n, reason: "n must be positive and at least p + q".into() });
        }
        Ok(Self { p, q, n })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> SignatureClass {
        if self.n == self.p + self.q {
            SignatureClass::NonDegenerate
        } else {
            SignatureClass::Degenerate
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.class() == SignatureClass::Degenerate
    }

    /// Same quadric with `q ≥ p`.
    pub fn normalized(&self) -> Self {
        Self { p: self.p.min(self.q), q: self.p.max(self.q), n: self.n }
    }

    fn require_degenerate(&self) -> Result<Self> {
        if !self.is_degenerate() {
            return Err(Error::NotDegenerate { p: self.p, q: self.q, n: self.n });
        }
        Ok(self.normalized())
    }
}

impl fmt::Display for QuadricSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.n)
    }
}

/// The six degenerate cases, with `D = n − p − q` and `q ≥ p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `p, q > 1`, `D > 1`.
    #[serde(rename = "PQbig_Dbig")]
    PqBigDBig,
    /// `p, q > 1`, `D = 1`.
    #[serde(rename = "PQbig_D1")]
    PqBigD1,
    /// `p = 1 < q`, `D > 1`.
    #[serde(rename = "POne_Dbig")]
    POneDBig,
    /// `p = 1 < q`, `D = 1`.
    #[serde(rename = "POne_D1")]
    POneD1,
    /// `p = q = 1`, `D > 1`.
    #[serde(rename = "PQ1_Dbig")]
    Pq1DBig,
    /// `p = q = 1`, `D = 1`.
    #[serde(rename = "PQ1_D1")]
    Pq1D1,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::PqBigDBig => "PQbig_Dbig",
            CaseTag::PqBigD1 => "PQbig_D1",
            CaseTag::POneDBig => "POne_Dbig",
            CaseTag::POneD1 => "POne_D1",
            CaseTag::Pq1DBig => "PQ1_Dbig",
            CaseTag::Pq1D1 => "PQ1_D1",
        })
    }
}

pub fn classify(sig: &QuadricSignature) -> Result<CaseTag> {
    let s = sig.require_degenerate()?;
    let d1 = s.n - s.p - s.q == 1;
    Ok(match (s.p, s.q, d1) {
        (1, 1, true) => CaseTag::Pq1D1,
        (1, 1, false) => CaseTag::Pq1DBig,
        (1, _, true) => CaseTag::POneD1,
        (1, _, false) => CaseTag::POneDBig,
        (_, _, true) => CaseTag::PqBigD1,
        (_, _, false) => CaseTag::PqBigDBig,
    })
}

fn ranks_from(coeff: Coeff, entries: impl IntoIterator<Item = usize>) -> GradedHomology {
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    for k in entries {
        *ranks.entry(k).or_default() += 1;
    }
    GradedHomology::from_ranks(coeff, ranks)
}

/// Homology of the double cover. All six cases collapse to one rule: a
/// free summand in each of the degrees `0, n−p−1, n−q−1, n−2`, counted with
/// multiplicity. The groups are free, so every coefficient ring sees the
/// same ranks.
pub fn homology_x(sig: &QuadricSignature, coeff: Coeff) -> Result<GradedHomology> {
    let QuadricSignature { p, q, n } = sig.require_degenerate()?;
    Ok(ranks_from(coeff, [0, n - p - 1, n - q - 1, n - 2]))
}

/// Rational homology of the quadric: the part of `H_*(X; ℚ)` fixed by the
/// antipode. The class in degree `n−q−1` is fixed iff `n−q` is even, the one
/// in degree `n−p−1` iff `n−p` is even, and the top class iff `n` is even.
/// When `p = 1` the first factor is `S^0` and the two classes landing in
/// degree `n−2` are swapped up to sign, leaving exactly one invariant.
pub fn rational_homology_q(sig: &QuadricSignature) -> Result<GradedHomology> {
    let QuadricSignature { p, q, n } = sig.require_degenerate()?;
    let even = |k: usize| k.is_multiple_of(2);
    let mut degrees = vec![0];
    match (p, q) {
        (1, 1) => {
            degrees.push(n - 2);
            if !even(n) {
                degrees.push(n - 2);
            }
        }
        (1, _) => {
            if even(n - q) {
                degrees.push(n - q - 1);
            }
            degrees.push(n - 2);
        }
        _ => {
            if even(n - q) {
                degrees.push(n - q - 1);
            }
            if even(n - p) {
                degrees.push(n - p - 1);
            }
            if even(n) {
                degrees.push(n - 2);
            }
        }
    }
    Ok(ranks_from(Coeff::Rational, degrees))
}

/// `H_*(Q_{p,q}^{p+q}; ℤ/2) ≅ H_*(S^{q−1}; ℤ/2) ⊗ H_*(ℝP^{p−1}; ℤ/2)` for
/// `q ≥ p`.
pub fn mod2_homology_q_nondegenerate(sig: &QuadricSignature) -> Result<GradedHomology> {
    if sig.is_degenerate() {
        return Err(Error::NotNonDegenerate { p: sig.p, q: sig.q, n: sig.n });
    }
    let QuadricSignature { p, q, .. } = sig.normalized();
    let sphere: Vec<(usize, usize)> = if q == 1 { vec![(0, 2)] } else { vec![(0, 1), (q - 1, 1)] };
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, r) in sphere {
        for j in 0..p {
            *ranks.entry(i + j).or_default() += r;
        }
    }
    Ok(GradedHomology::from_ranks(Coeff::Mod2, ranks))
}

/// Mod 2 homology of the quadric: `ℤ/2` in each degree of `[0, n−q−1]` and
/// of `[n−p−1, n−2]`, ranks adding where the ranges overlap. Non-degenerate
/// signatures are forwarded to [`mod2_homology_q_nondegenerate`].
pub fn mod2_homology_q(sig: &QuadricSignature) -> Result<GradedHomology> {
    if !sig.is_degenerate() {
        return mod2_homology_q_nondegenerate(sig);
    }
    let QuadricSignature { p, q, n } = sig.normalized();
    Ok(ranks_from(Coeff::Mod2, (0..n - q).chain(n - p - 1..n - 1)))
}

/// Integral homology of the quadric from its two Betti sequences.
///
/// The cover has free homology, so by the transfer every torsion summand of
/// `H_k(Q; ℤ)` has order 2: `H_k = ℤ^{m_k} ⊕ (ℤ/2)^{l_k}` with
/// `m_k = b_k(ℚ)` and `l_{k+1} = b_{k+1}(ℤ/2) − b_{k+1}(ℚ) − l_k`, `l_0 = 0`.
pub fn integer_homology_q(sig: &QuadricSignature) -> Result<GradedHomology> {
    let rational = rational_homology_q(sig)?;
    let mod2 = mod2_homology_q(sig)?;
    let top = mod2.top_degree().unwrap_or(0).max(rational.top_degree().unwrap_or(0));
    let mut out = GradedHomology::zero(Coeff::Integer);
    let mut l_prev: i64 = 0;
    for k in 0..=top + 1 {
        let m = rational.rank(k) as i64;
        let l = if k == 0 { 0 } else { mod2.rank(k) as i64 - m - l_prev };
        if l < 0 || (k == 0 && mod2.rank(0) as i64 != m) {
            return Err(Error::Inconsistent { degree: k, value: if k == 0 { mod2.rank(0) as i64 - m } else { l } });
        }
        out.add(k, FgAbelianGroup::new(m as usize, std::iter::repeat_n(2, l as usize)))?;
        l_prev = l;
    }
    Ok(out)
}

/// The explicit integral table for `q > p > 1`, `n > p + q + 1` with `p, q, n`
/// all even; `None` outside that case.
///
/// `ℤ` in degrees `0, n−q−1, n−p−1, n−2`; `ℤ/2` in odd degrees strictly
/// between `0` and `n−q−1` and in even degrees strictly between `n−p−1` and
/// `n−2`; zero elsewhere.
pub fn even_case_table(sig: &QuadricSignature) -> Option<GradedHomology> {
    let QuadricSignature { p, q, n } = sig.normalized();
    if !(q > p && p > 1 && n > p + q + 1 && p % 2 == 0 && q % 2 == 0 && n % 2 == 0) {
        return None;
    }
    let mut h = GradedHomology::zero(Coeff::Integer);
    for k in [0, n - q - 1, n - p - 1, n - 2] {
        h.add(k, FgAbelianGroup::free(1)).ok()?;
    }
    let z2 = || FgAbelianGroup::new(0, [2]);
    for k in (1..n - q - 1).filter(|k| k % 2 == 1) {
        h.add(k, z2()).ok()?;
    }
    for k in (n - p..n - 2).filter(|k| k % 2 == 0) {
        h.add(k, z2()).ok()?;
    }
    Some(h)
}

/// The join decomposition of the cover together with its antipode:
/// `X = A ⋆ B` with `A = S^{p−1} × S^{q−1}` acted on by `a_{p−1} × a_{q−1}`
/// and `B = S^{n−p−q−1}` acted on by `a_{n−p−q−1}`.
pub struct AntipodeJoinData {
    pub a: PointedGradedHomology,
    pub a_map: GradedMap,
    pub b: PointedGradedHomology,
    pub b_map: GradedMap,
}

pub fn antipode_join_data(sig: &QuadricSignature) -> Result<AntipodeJoinData> {
    let QuadricSignature { p, q, n } = sig.require_degenerate()?;
    Ok(AntipodeJoinData {
        a: product_homology(&sphere_homology(p - 1), &sphere_homology(q - 1))?,
        a_map: product_map(&sphere_antipode(p - 1), &sphere_antipode(q - 1))?,
        b: sphere_homology(n - p - q - 1),
        b_map: sphere_antipode(n - p - q - 1),
    })
}

/// `H_*(X; ℤ)` recomputed through the join formula.
pub fn homology_x_via_join(sig: &QuadricSignature) -> Result<GradedHomology> {
    let d = antipode_join_data(sig)?;
    join_homology(&d.a, &d.b)
}

/// `H_*(Q; ℚ)` as the invariants of the antipode action assembled through
/// the join of maps.
pub fn rational_q_via_join(sig: &QuadricSignature) -> Result<GradedHomology> {
    let d = antipode_join_data(sig)?;
    invariant_subgroup(&join_induced_map(&d.a_map, &d.b_map, &d.a, &d.b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize, n: usize) -> QuadricSignature {
        QuadricSignature::new(p, q, n).unwrap()
    }

    fn ranks(coeff: Coeff, r: &[(usize, usize)]) -> GradedHomology {
        GradedHomology::from_ranks(coeff, r.iter().copied())
    }

    fn z_row(row: &[&str]) -> GradedHomology {
        let mut h = GradedHomology::zero(Coeff::Integer);
        for (k, g) in row.iter().enumerate() {
            let g = match *g {
                "Z" => FgAbelianGroup::free(1),
                "Z2" => FgAbelianGroup::new(0, [2]),
                "Z^2" => FgAbelianGroup::free(2),
                "Z+Z2" => FgAbelianGroup::new(1, [2]),
                "0" => FgAbelianGroup::zero(),
                other => panic!("{other}"),
            };
            h.add(k, g).unwrap();
        }
        h
    }

    fn degenerate(max_n: usize) -> Vec<QuadricSignature> {
        let mut out = Vec::new();
        for n in 3..=max_n {
            for p in 1..n {
                for q in p..n - p {
                    out.push(sig(p, q, n));
                }
            }
        }
        out
    }

    #[test]
    fn signature_validation() {
        assert!(matches!(QuadricSignature::new(0, 3, 5), Err(Error::ProjectiveSpaceReferral(m)) if m.contains("ℝP^1")));
        assert!(matches!(QuadricSignature::new(2, 3, 4), Err(Error::InvalidSignature { .. })));
        assert_eq!(sig(2, 3, 5).class(), SignatureClass::NonDegenerate);
        assert_eq!(sig(3, 2, 7).normalized(), sig(2, 3, 7));
        assert!(QuadricSignature::exploratory(0, 2, 4).is_ok());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&sig(2, 3, 7)).unwrap(), CaseTag::PqBigDBig);
        assert_eq!(classify(&sig(3, 2, 6)).unwrap(), CaseTag::PqBigD1);
        assert_eq!(classify(&sig(1, 1, 3)).unwrap(), CaseTag::Pq1D1);
        assert_eq!(classify(&sig(1, 3, 6)).unwrap(), CaseTag::POneDBig);
        assert_eq!(classify(&sig(1, 3, 5)).unwrap(), CaseTag::POneD1);
        assert_eq!(classify(&sig(1, 1, 5)).unwrap(), CaseTag::Pq1DBig);
        assert!(matches!(classify(&sig(2, 2, 4)), Err(Error::NotDegenerate { .. })));
        assert_eq!(CaseTag::PqBigDBig.to_string(), "PQbig_Dbig");
    }

    #[test]
    fn cover_examples() {
        let z = Coeff::Integer;
        assert_eq!(homology_x(&sig(2, 3, 7), z).unwrap(), ranks(z, &[(0, 1), (3, 1), (4, 1), (5, 1)]));
        assert_eq!(homology_x(&sig(1, 1, 3), z).unwrap(), ranks(z, &[(0, 1), (1, 3)]));
        assert_eq!(homology_x(&sig(1, 4, 6), z).unwrap(), ranks(z, &[(0, 1), (1, 1), (4, 2)]));
        assert_eq!(homology_x(&sig(2, 2, 6), z).unwrap(), ranks(z, &[(0, 1), (3, 2), (4, 1)]));
        assert_eq!(homology_x(&sig(2, 3, 6), z).unwrap(), ranks(z, &[(0, 1), (2, 1), (3, 1), (4, 1)]));
        assert_eq!(homology_x(&sig(1, 2, 4), z).unwrap(), ranks(z, &[(0, 1), (1, 1), (2, 2)]));
        assert!(matches!(homology_x(&sig(2, 2, 4), z), Err(Error::NotDegenerate { .. })));
    }

    #[test]
    fn rational_examples() {
        let q = Coeff::Rational;
        assert_eq!(rational_homology_q(&sig(2, 3, 7)).unwrap(), ranks(q, &[(0, 1), (3, 1)]));
        assert_eq!(rational_homology_q(&sig(2, 2, 6)).unwrap(), ranks(q, &[(0, 1), (3, 2), (4, 1)]));
        assert_eq!(rational_homology_q(&sig(1, 2, 4)).unwrap(), ranks(q, &[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(rational_homology_q(&sig(1, 1, 3)).unwrap(), ranks(q, &[(0, 1), (1, 2)]));
        assert_eq!(rational_homology_q(&sig(1, 1, 5)).unwrap(), ranks(q, &[(0, 1), (3, 2)]));
        assert_eq!(rational_homology_q(&sig(1, 1, 4)).unwrap(), ranks(q, &[(0, 1), (2, 1)]));
        // n = p + q + 1 with n even keeps the top class.
        assert_eq!(rational_homology_q(&sig(2, 3, 6)).unwrap(), ranks(q, &[(0, 1), (3, 1), (4, 1)]));
        assert_eq!(rational_homology_q(&sig(2, 2, 5)).unwrap(), ranks(q, &[(0, 1)]));
    }

    #[test]
    fn mod2_examples() {
        let f = Coeff::Mod2;
        assert_eq!(mod2_homology_q_nondegenerate(&sig(1, 2, 3)).unwrap(), ranks(f, &[(0, 1), (1, 1)]));
        assert_eq!(mod2_homology_q_nondegenerate(&sig(2, 2, 4)).unwrap(), ranks(f, &[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(mod2_homology_q_nondegenerate(&sig(1, 1, 2)).unwrap(), ranks(f, &[(0, 2)]));
        assert!(matches!(mod2_homology_q_nondegenerate(&sig(1, 1, 3)), Err(Error::NotNonDegenerate { .. })));
        assert_eq!(
            mod2_homology_q(&sig(2, 3, 7)).unwrap(),
            ranks(f, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)])
        );
        assert_eq!(mod2_homology_q(&sig(2, 2, 5)).unwrap(), ranks(f, &[(0, 1), (1, 1), (2, 2), (3, 1)]));
        assert_eq!(mod2_homology_q(&sig(1, 1, 4)).unwrap(), ranks(f, &[(0, 1), (1, 1), (2, 2)]));
        assert_eq!(mod2_homology_q(&sig(2, 2, 4)).unwrap(), ranks(f, &[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn integer_examples() {
        assert_eq!(integer_homology_q(&sig(2, 4, 8)).unwrap(), z_row(&["Z", "Z2", "0", "Z", "0", "Z", "Z"]));
        assert_eq!(integer_homology_q(&sig(3, 5, 9)).unwrap(), z_row(&["Z", "Z2", "0", "Z", "0", "Z", "Z2", "0"]));
        assert_eq!(integer_homology_q(&sig(1, 1, 3)).unwrap(), z_row(&["Z", "Z^2"]));
        assert_eq!(integer_homology_q(&sig(1, 2, 5)).unwrap(), z_row(&["Z", "Z2", "0", "Z"]));
        assert_eq!(integer_homology_q(&sig(2, 2, 5)).unwrap(), z_row(&["Z", "Z2", "Z2", "0"]));
        assert_eq!(integer_homology_q(&sig(1, 1, 4)).unwrap(), z_row(&["Z", "Z2", "Z"]));
    }

    #[test]
    fn even_case_agrees_with_recursion() {
        let mut seen = 0;
        for s in degenerate(16) {
            if let Some(table) = even_case_table(&s) {
                assert_eq!(integer_homology_q(&s).unwrap(), table, "{s}");
                seen += 1;
            }
        }
        assert!(seen > 5);
        assert_eq!(even_case_table(&sig(2, 4, 8)).unwrap(), z_row(&["Z", "Z2", "0", "Z", "0", "Z", "Z"]));
        assert!(even_case_table(&sig(2, 3, 8)).is_none());
    }

    #[test]
    fn swap_symmetry() {
        for s in degenerate(10) {
            let t = sig(s.q(), s.p(), s.n());
            assert_eq!(homology_x(&s, Coeff::Integer).unwrap(), homology_x(&t, Coeff::Integer).unwrap());
            assert_eq!(rational_homology_q(&s).unwrap(), rational_homology_q(&t).unwrap());
            assert_eq!(mod2_homology_q(&s).unwrap(), mod2_homology_q(&t).unwrap());
            assert_eq!(integer_homology_q(&s).unwrap(), integer_homology_q(&t).unwrap());
            assert_eq!(classify(&s).unwrap(), classify(&t).unwrap());
        }
    }

    #[test]
    fn join_derivations_agree() {
        for s in degenerate(12) {
            assert_eq!(homology_x(&s, Coeff::Integer).unwrap(), homology_x_via_join(&s).unwrap(), "{s}");
            assert_eq!(rational_homology_q(&s).unwrap(), rational_q_via_join(&s).unwrap(), "{s}");
        }
    }

    #[test]
    fn universal_coefficients_and_euler() {
        for s in degenerate(20) {
            let z = integer_homology_q(&s).unwrap();
            let q = rational_homology_q(&s).unwrap();
            let f = mod2_homology_q(&s).unwrap();
            let top = f.top_degree().unwrap() + 1;
            for k in 0..=top {
                let l = |k: usize| z.get(k).even_torsion_count();
                assert_eq!(q.rank(k), z.rank(k));
                assert_eq!(f.rank(k), z.rank(k) + l(k) + if k > 0 { l(k - 1) } else { 0 });
            }
            let xq = homology_x(&s, Coeff::Rational).unwrap();
            let x2 = homology_x(&s, Coeff::Mod2).unwrap();
            assert_eq!(xq.euler_characteristic(), 2 * q.euler_characteristic(), "{s}");
            assert_eq!(x2.euler_characteristic(), 2 * f.euler_characteristic(), "{s}");
            for k in 0..=top {
                assert!(x2.rank(k) <= 2 * f.rank(k), "{s} degree {k}");
            }
        }
    }
}
