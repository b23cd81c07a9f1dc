use std::fmt::Write as _;

use quadhom::closed_forms::QuadricSignature;
use quadhom::graded::{Coeff, FgAbelianGroup, GradedHomology};
use quadhom::verify::{CheckStatus, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Unicode,
    Ascii,
    Latex,
}

struct Glyphs {
    z: &'static str,
    q: &'static str,
    plus: &'static str,
}

impl Style {
    fn glyphs(self) -> Glyphs {
        match self {
            Style::Unicode => Glyphs { z: "ℤ", q: "ℚ", plus: " ⊕ " },
            Style::Ascii => Glyphs { z: "Z", q: "Q", plus: " + " },
            Style::Latex => Glyphs { z: "\\mathbb{Z}", q: "\\mathbb{Q}", plus: " \\oplus " },
        }
    }

    fn power(self, base: &str, e: usize) -> String {
        match (self, e) {
            (_, 1) => base.to_string(),
            (Style::Latex, _) => format!("{base}^{{{e}}}"),
            _ => format!("{base}^{e}"),
        }
    }
}

/// One homology group as text. Over a field only the dimension matters.
pub fn group(coeff: Coeff, g: &FgAbelianGroup, style: Style) -> String {
    let gl = style.glyphs();
    let mut parts = Vec::new();
    let free_base = match coeff {
        Coeff::Integer => gl.z.to_string(),
        Coeff::Rational => gl.q.to_string(),
        Coeff::Mod2 => format!("{}/2", gl.z),
    };
    if g.free_rank() > 0 {
        let base = if coeff == Coeff::Mod2 && g.free_rank() > 1 { format!("({free_base})") } else { free_base };
        parts.push(style.power(&base, g.free_rank()));
    }
    let t = g.torsion();
    let mut i = 0;
    while i < t.len() {
        let run = t[i..].iter().take_while(|&&d| d == t[i]).count();
        let base = format!("{}/{}", gl.z, t[i]);
        parts.push(if run == 1 { base } else { style.power(&format!("({base})"), run) });
        i += run;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(gl.plus)
    }
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> =
            r.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(width[c] - s.chars().count()))).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn degrees(hs: &[&GradedHomology]) -> Vec<usize> {
    let mut ks: Vec<usize> = hs.iter().flat_map(|h| h.degrees()).collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn space_name(space: &str, sig: &QuadricSignature) -> String {
    format!("{space}_{{{},{}}}^{}", sig.p(), sig.q(), sig.n())
}

/// Groups of one or two homology computations, degree by degree.
pub fn homology_table(space: &str, sig: &QuadricSignature, columns: &[(&str, &GradedHomology)]) -> String {
    let coeff = columns[0].1.coeff();
    let mut out = format!("H_*({}; {coeff})\n", space_name(space, sig));
    let mut rows = vec![std::iter::once("k".to_string()).chain(columns.iter().map(|c| c.0.to_string())).collect()];
    for k in degrees(&columns.iter().map(|c| c.1).collect::<Vec<_>>()) {
        rows.push(
            std::iter::once(k.to_string())
                .chain(columns.iter().map(|c| group(coeff, c.1.get(k), Style::Unicode)))
                .collect(),
        );
    }
    out.push_str(&pad_table(&rows));
    out
}

pub fn homology_csv(sig: &QuadricSignature, h: &GradedHomology) -> String {
    let mut out = String::from("p,q,n,degree,rank,torsion\n");
    for (k, g) in h.iter() {
        let torsion: Vec<String> = g.torsion().iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{},{},{},{k},{},{}", sig.p(), sig.q(), sig.n(), g.free_rank(), torsion.join(";"));
    }
    out
}

pub fn homology_latex(columns: &[(&str, &GradedHomology)]) -> String {
    let coeff = columns[0].1.coeff();
    let mut out = format!("\\begin{{tabular}}{{r{}}}\n", "l".repeat(columns.len()));
    let head: Vec<String> = columns.iter().map(|c| c.0.to_string()).collect();
    let _ = writeln!(out, "$k$ & {} \\\\ \\hline", head.join(" & "));
    for k in degrees(&columns.iter().map(|c| c.1).collect::<Vec<_>>()) {
        let cells: Vec<String> =
            columns.iter().map(|c| format!("${}$", group(coeff, c.1.get(k), Style::Latex))).collect();
        let _ = writeln!(out, "{k} & {} \\\\", cells.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    out
}

/// One row per signature, columns `H_0 … H_{top}`.
pub struct WideTable {
    pub coeff: Coeff,
    pub top: usize,
    pub rows: Vec<(QuadricSignature, GradedHomology)>,
}

impl WideTable {
    fn cells(&self, h: &GradedHomology, style: Style) -> Vec<String> {
        (0..=self.top).map(|k| group(self.coeff, h.get(k), style)).collect()
    }

    pub fn text(&self) -> String {
        let mut rows =
            vec![std::iter::once("(p,q,n)".to_string()).chain((0..=self.top).map(|k| format!("H{k}"))).collect()];
        for (sig, h) in &self.rows {
            rows.push(std::iter::once(sig.to_string()).chain(self.cells(h, Style::Unicode)).collect());
        }
        format!("H_*(-; {})\n{}", self.coeff, pad_table(&rows))
    }

    pub fn csv(&self) -> String {
        let head: Vec<String> = (0..=self.top).map(|k| format!("H{k}")).collect();
        let mut out = format!("p,q,n,{}\n", head.join(","));
        for (sig, h) in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", sig.p(), sig.q(), sig.n(), self.cells(h, Style::Ascii).join(","));
        }
        out
    }

    pub fn latex(&self) -> String {
        let mut out = format!("\\begin{{tabular}}{{l{}}}\n", "c".repeat(self.top + 1));
        let head: Vec<String> = (0..=self.top).map(|k| format!("$H_{{{k}}}$")).collect();
        let _ = writeln!(out, "$(p,q,n)$ & {} \\\\ \\hline", head.join(" & "));
        for (sig, h) in &self.rows {
            let cells: Vec<String> = self.cells(h, Style::Latex).into_iter().map(|c| format!("${c}$")).collect();
            let _ = writeln!(out, "${sig}$ & {} \\\\", cells.join(" & "));
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

fn status_word(s: &CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::SkippedInfeasible => "skipped-infeasible",
    }
}

pub fn verify_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for r in reports {
        let counts = [CheckStatus::Pass, CheckStatus::Fail, CheckStatus::SkippedInfeasible].map(|s| r.count(&s));
        pass += counts[0];
        fail += counts[1];
        skip += counts[2];
        let _ = writeln!(
            out,
            "{:<10} pass {:>2}  fail {:>2}  skipped {:>2}",
            r.signature.to_string(),
            counts[0],
            counts[1],
            counts[2]
        );
        for c in r.failures() {
            let _ = write!(out, "  FAIL {}", c.name);
            if let Some(m) = &c.mismatch {
                let _ = write!(out, ": degrees {:?}, expected {}, observed {}", m.degrees, m.expected, m.observed);
            }
            if let Some(note) = &c.note {
                let _ = write!(out, ": {note}");
            }
            out.push('\n');
        }
    }
    let _ = writeln!(out, "{} signatures: {pass} passed, {fail} failed, {skip} skipped", reports.len());
    out
}

pub fn verify_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("p,q,n,check,status\n");
    for r in reports {
        let s = r.signature;
        for c in &r.checks {
            let _ = writeln!(out, "{},{},{},{},{}", s.p(), s.q(), s.n(), c.name, status_word(&c.status));
        }
    }
    out
}
