//! Formula-versus-oracle cross-checks for one signature or a whole sweep.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    even_case_table, homology_x, homology_x_via_join, integer_homology_q, mod2_homology_q, rational_homology_q,
    rational_q_via_join, QuadricSignature,
};
use crate::error::{Error, Result};
use crate::graded::{Coeff, GradedHomology};
use crate::homology_oracle::{build_q, build_x, default_cap, homology_of_complex_multi, rational_q_via_invariants};

const COEFFS: [Coeff; 3] = [Coeff::Integer, Coeff::Rational, Coeff::Mod2];

/// How much computation a verification run may spend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Budget {
    /// Formulas, the cover oracle and the quotient oracle.
    Full,
    /// Formulas and the cover oracle; no quotient complex is built.
    XOnly,
    /// Formula-level identities only.
    FormulaOnly,
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Budget::Full => "full",
            Budget::XOnly => "x-only",
            Budget::FormulaOnly => "formula-only",
        })
    }
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Budget::Full),
            "x-only" => Ok(Budget::XOnly),
            "formula-only" => Ok(Budget::FormulaOnly),
            other => Err(Error::Unsupported(format!("unknown budget {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub budget: Budget,
    /// Simplex cap handed to `build_q`.
    pub cap: u64,
    /// Record wall-clock phase timings. Off by default so that reports are
    /// reproducible byte for byte.
    pub timings: bool,
}

impl VerifyConfig {
    pub fn new(budget: Budget) -> Self {
        Self { budget, cap: default_cap(), timings: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    SkippedInfeasible,
}

/// The two sides of a failed comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degrees: Vec<usize>,
    pub expected: GradedHomology,
    pub observed: GradedHomology,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub signature: QuadricSignature,
    pub budget: Budget,
    pub checks: Vec<CheckResult>,
    /// Barycentric subdivisions the quotient needed, when one was built.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivisions: Option<usize>,
    /// Seconds per phase, present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    pub fn count(&self, status: &CheckStatus) -> usize {
        self.checks.iter().filter(|c| &c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.count(&CheckStatus::Fail) > 0
    }

    pub fn has_skips(&self) -> bool {
        self.count(&CheckStatus::SkippedInfeasible) > 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// All degenerate signatures with `q ≥ p ≥ 1` and `p + q < n ≤ max_n`,
/// ordered by `n`, then `p`, then `q`.
pub fn enumerate_signatures(max_n: usize) -> Vec<QuadricSignature> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for p in 1..n {
            for q in p..n - p {
                out.push(QuadricSignature::new(p, q, n).expect("enumerated signatures are valid"));
            }
        }
    }
    out
}

/// Verifies every enumerated signature; reports come back in enumeration order.
pub fn sweep(max_n: usize, config: &VerifyConfig) -> Vec<VerificationReport> {
    enumerate_signatures(max_n).par_iter().map(|sig| verify_signature(sig, config)).collect()
}

struct Recorder {
    checks: Vec<CheckResult>,
    subdivisions: Option<usize>,
    timings: Option<BTreeMap<String, f64>>,
}

impl Recorder {
    fn push(&mut self, name: &str, status: CheckStatus, mismatch: Option<Mismatch>, note: Option<String>) {
        self.checks.push(CheckResult { name: name.to_string(), status, mismatch, note });
    }

    fn compare(&mut self, name: &str, expected: Result<GradedHomology>, observed: Result<GradedHomology>) {
        match (expected, observed) {
            (Ok(e), Ok(o)) if e == o => self.push(name, CheckStatus::Pass, None, None),
            (Ok(e), Ok(o)) => {
                let degrees = differing_degrees(&e, &o);
                self.push(name, CheckStatus::Fail, Some(Mismatch { degrees, expected: e, observed: o }), None)
            }
            (Err(e), _) | (_, Err(e)) => self.push(name, CheckStatus::Fail, None, Some(e.to_string())),
        }
    }

    /// A check whose outcome is a list of offending degrees.
    fn identity(&mut self, name: &str, bad: Result<Vec<usize>>) {
        match bad {
            Ok(b) if b.is_empty() => self.push(name, CheckStatus::Pass, None, None),
            Ok(b) => self.push(name, CheckStatus::Fail, None, Some(format!("fails in degrees {b:?}"))),
            Err(e) => self.push(name, CheckStatus::Fail, None, Some(e.to_string())),
        }
    }

    fn holds(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.push(name, CheckStatus::Pass, None, None);
        } else {
            self.push(name, CheckStatus::Fail, None, Some(detail()));
        }
    }

    fn skip(&mut self, names: &[&str], why: &str) {
        for name in names {
            self.push(name, CheckStatus::SkippedInfeasible, None, Some(why.to_string()));
        }
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        if let Some(t) = self.timings.as_mut() {
            t.insert(phase.to_string(), start.elapsed().as_secs_f64());
        }
        out
    }
}

fn differing_degrees(a: &GradedHomology, b: &GradedHomology) -> Vec<usize> {
    let mut ks: Vec<usize> = a.degrees().chain(b.degrees()).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.retain(|&k| a.get(k) != b.get(k));
    ks
}

/// Degrees where `b_k(ℤ/2) ≠ m_k + l_k + l_{k−1}` or `b_k(ℚ) ≠ m_k`.
fn uct_violations(z: &GradedHomology, q: &GradedHomology, z2: &GradedHomology) -> Vec<usize> {
    let top = [z.top_degree(), q.top_degree(), z2.top_degree()].into_iter().flatten().max().unwrap_or(0);
    (0..=top + 1)
        .filter(|&k| {
            let m = z.get(k).free_rank();
            let l = |j: usize| z.get(j).even_torsion_count();
            let below = if k == 0 { 0 } else { l(k - 1) };
            z2.rank(k) != m + l(k) + below || q.rank(k) != m
        })
        .collect()
}

/// Degrees where `b_k(X; ℤ/2) > 2·b_k(Q; ℤ/2)`.
fn cover_bound_violations(x: &GradedHomology, q: &GradedHomology) -> Vec<usize> {
    x.degrees().filter(|&k| x.rank(k) > 2 * q.rank(k)).collect()
}

const X_ORACLE: [&str; 4] = ["x.oracle.z", "x.oracle.q", "x.oracle.z2", "x.uct.oracle"];
const X_INVARIANTS: [&str; 1] = ["q.rational.invariants"];
const Q_ORACLE: [&str; 6] =
    ["q.oracle.z", "q.oracle.q", "q.oracle.z2", "q.uct.oracle", "q.euler.oracle", "q.cover-bound.oracle"];

/// Runs every check the budget allows. Never fails: a check that cannot be
/// run is reported as skipped, and an unexpected error is a failed check.
pub fn verify_signature(sig: &QuadricSignature, config: &VerifyConfig) -> VerificationReport {
    let mut rec = Recorder { checks: Vec::new(), subdivisions: None, timings: config.timings.then(BTreeMap::new) };

    rec.time("formula", |rec| formula_checks(rec, sig));

    if config.budget == Budget::FormulaOnly {
        rec.skip(&X_ORACLE, "budget: formula-only");
        rec.skip(&X_INVARIANTS, "budget: formula-only");
        rec.skip(&Q_ORACLE, "budget: formula-only");
        return finish(sig, config, rec);
    }

    let x_oracle = rec.time("x-oracle", |_| -> Result<(Vec<GradedHomology>, i64)> {
        let (x, _) = build_x(sig)?;
        let hs = homology_of_complex_multi(&x, &COEFFS)?;
        Ok((hs.into_iter().map(|r| r.homology).collect(), x.euler_characteristic()))
    });
    let x_hom = match x_oracle {
        Ok((hs, chi)) => {
            for (name, (coeff, h)) in ["x.oracle.z", "x.oracle.q", "x.oracle.z2"].iter().zip(COEFFS.iter().zip(&hs)) {
                rec.compare(name, homology_x(sig, *coeff), Ok(h.clone()));
            }
            rec.identity("x.uct.oracle", Ok(uct_violations(&hs[0], &hs[1], &hs[2])));
            Some((hs, chi))
        }
        Err(e) => {
            for name in X_ORACLE {
                rec.push(name, CheckStatus::Fail, None, Some(e.to_string()));
            }
            None
        }
    };
    let inv = rec.time("x-invariants", |_| rational_q_via_invariants(sig));
    rec.compare("q.rational.invariants", rational_homology_q(sig), inv);

    if config.budget == Budget::XOnly {
        rec.skip(&Q_ORACLE, "budget: x-only");
        return finish(sig, config, rec);
    }

    let built = rec.time("q-build", |_| build_q(sig, config.cap));
    let build = match built {
        Ok(b) => b,
        Err(e @ Error::Infeasible { .. }) => {
            rec.skip(&Q_ORACLE, &e.to_string());
            return finish(sig, config, rec);
        }
        Err(e) => {
            for name in Q_ORACLE {
                rec.push(name, CheckStatus::Fail, None, Some(e.to_string()));
            }
            return finish(sig, config, rec);
        }
    };
    let q_oracle = rec.time("q-oracle", |_| homology_of_complex_multi(&build.quotient, &COEFFS));
    match q_oracle {
        Ok(rs) => {
            let hs: Vec<GradedHomology> = rs.into_iter().map(|r| r.homology).collect();
            rec.compare("q.oracle.z", integer_homology_q(sig), Ok(hs[0].clone()));
            rec.compare("q.oracle.q", rational_homology_q(sig), Ok(hs[1].clone()));
            rec.compare("q.oracle.z2", mod2_homology_q(sig), Ok(hs[2].clone()));
            rec.identity("q.uct.oracle", Ok(uct_violations(&hs[0], &hs[1], &hs[2])));
            let q_chi = build.quotient.euler_characteristic();
            let chi_ok = hs.iter().all(|h| h.euler_characteristic() == q_chi);
            match &x_hom {
                Some((xh, x_chi)) => {
                    let ok = chi_ok && xh[2].euler_characteristic() == *x_chi && *x_chi == 2 * q_chi;
                    rec.holds("q.euler.oracle", ok, || {
                        format!(
                            "χ(X) = {x_chi}, χ(Q) = {q_chi}, homology χ over ℤ/2: {} and {}",
                            xh[2].euler_characteristic(),
                            hs[2].euler_characteristic()
                        )
                    });
                    rec.identity("q.cover-bound.oracle", Ok(cover_bound_violations(&xh[2], &hs[2])));
                }
                None => {
                    let why = Some("cover oracle unavailable".to_string());
                    rec.push("q.euler.oracle", CheckStatus::Fail, None, why.clone());
                    rec.push("q.cover-bound.oracle", CheckStatus::Fail, None, why);
                }
            }
        }
        Err(e) => {
            for name in Q_ORACLE {
                rec.push(name, CheckStatus::Fail, None, Some(e.to_string()));
            }
        }
    }
    rec.subdivisions = Some(build.subdivisions);
    finish(sig, config, rec)
}

fn finish(sig: &QuadricSignature, config: &VerifyConfig, rec: Recorder) -> VerificationReport {
    VerificationReport {
        signature: *sig,
        budget: config.budget,
        checks: rec.checks,
        subdivisions: rec.subdivisions,
        timings: rec.timings,
    }
}

/// Identities among the closed forms themselves.
fn formula_checks(rec: &mut Recorder, sig: &QuadricSignature) {
    rec.compare("x.join-route", homology_x(sig, Coeff::Integer), homology_x_via_join(sig));
    rec.compare("q.rational.join-route", rational_homology_q(sig), rational_q_via_join(sig));
    let z = integer_homology_q(sig);
    if let Some(table) = even_case_table(sig) {
        rec.compare("q.even-table", Ok(table), z.clone());
    }
    let (q, z2) = (rational_homology_q(sig), mod2_homology_q(sig));
    let uct = match (&z, &q, &z2) {
        (Ok(z), Ok(q), Ok(z2)) => Ok(uct_violations(z, q, z2)),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Err(Error::Unsupported(e.to_string())),
    };
    rec.identity("q.uct.formula", uct);
    match (homology_x(sig, Coeff::Mod2), z2) {
        (Ok(x), Ok(q)) => {
            let (cx, cq) = (x.euler_characteristic(), q.euler_characteristic());
            rec.holds("q.euler.formula", cx == 2 * cq, || format!("χ(X) = {cx}, χ(Q) = {cq}"));
            rec.identity("q.cover-bound.formula", Ok(cover_bound_violations(&x, &q)));
        }
        (Err(e), _) | (_, Err(e)) => {
            rec.identity("q.euler.formula", Err(Error::Unsupported(e.to_string())));
            rec.identity("q.cover-bound.formula", Err(e));
        }
    }
}
