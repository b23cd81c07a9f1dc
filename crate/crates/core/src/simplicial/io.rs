use std::fmt::Write as _;

use super::{Label, SimplicialComplex};
use crate::error::{Error, Result};

const TRACE_PREFIX: &str = "# complex: ";

/// One facet per line, labels separated by spaces. A leading comment line
/// carries the construction trace.
pub fn write_facets(c: &SimplicialComplex) -> String {
    let mut out = format!("{TRACE_PREFIX}{}\n", c.trace());
    for f in c.facet_labels() {
        let line: Vec<String> = f.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Parses the format written by [`write_facets`]. Other `#` lines are
/// ignored.
pub fn read_facets(text: &str) -> Result<SimplicialComplex> {
    let mut trace = String::from("imported");
    let mut facets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(t) = line.strip_prefix(TRACE_PREFIX.trim_end()) {
            trace = t.trim().to_string();
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let facet = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Label>().map_err(|e| match e {
                    Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    Ok(SimplicialComplex::from_facets(facets, trace))
}
