mod render;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quadhom::closed_forms::{homology_x, integer_homology_q, mod2_homology_q, rational_homology_q, QuadricSignature};
use quadhom::graded::{Coeff, GradedHomology};
use quadhom::homology_oracle::{build_q, build_x, homology_of_complex, CAP_ENV, DEFAULT_CAP};
use quadhom::simplicial::write_facets;
use quadhom::verify::{enumerate_signatures, sweep, Budget, VerifyConfig};
use quadhom::Error;

use render::WideTable;

/// Homology of real projective quadrics and their double covers.
#[derive(Parser)]
#[command(name = "quadhom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of one space from the closed forms, the simplicial oracle, or both.
    Homology(HomologyArgs),
    /// Closed-form homology of every degenerate signature up to a given n.
    Table(TableArgs),
    /// Cross-check closed forms against the oracle for every signature up to a given n.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    #[value(name = "X")]
    X,
    #[value(name = "Q")]
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    Z,
    Q,
    Z2,
}

impl From<CoeffArg> for Coeff {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Z => Coeff::Integer,
            CoeffArg::Q => Coeff::Rational,
            CoeffArg::Z2 => Coeff::Mod2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BudgetArg {
    Full,
    XOnly,
    FormulaOnly,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "Q")]
    space: Space,
    #[arg(long, value_enum, default_value = "z")]
    coeff: CoeffArg,
    #[arg(long, value_enum, default_value = "formula")]
    method: Method,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Largest complex the oracle may build, in simplices.
    #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Write the facet list of the complex the oracle used.
    #[arg(long, value_name = "PATH")]
    dump_complex: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "z")]
    coeff: CoeffArg,
    #[arg(long, value_enum, default_value = "Q")]
    space: Space,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "full")]
    budget: BudgetArg,
    /// Treat skipped checks as failures.
    #[arg(long)]
    strict: bool,
    #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Include wall-clock phase timings (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidSignature { .. }
            | Error::ProjectiveSpaceReferral(_)
            | Error::NotDegenerate { .. }
            | Error::NotNonDegenerate { .. },
        ) => EXIT_INVALID,
        Some(Error::Infeasible { .. }) => EXIT_INFEASIBLE,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Homology(a) => cmd_homology(&a),
        Command::Table(a) => cmd_table(&a).map(|()| 0),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print(s: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn formula(space: Space, sig: &QuadricSignature, coeff: Coeff) -> quadhom::Result<GradedHomology> {
    match (space, coeff) {
        (Space::X, c) => homology_x(sig, c),
        (Space::Q, Coeff::Integer) => integer_homology_q(sig),
        (Space::Q, Coeff::Rational) => rational_homology_q(sig),
        (Space::Q, Coeff::Mod2) => mod2_homology_q(sig),
    }
}

fn oracle(a: &HomologyArgs, sig: &QuadricSignature) -> anyhow::Result<GradedHomology> {
    let complex = match a.space {
        Space::X => build_x(sig)?.0,
        Space::Q => build_q(sig, a.cap)?.quotient,
    };
    if let Some(path) = &a.dump_complex {
        std::fs::write(path, write_facets(&complex)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(homology_of_complex(&complex, a.coeff.into())?.homology)
}

fn cmd_homology(a: &HomologyArgs) -> anyhow::Result<u8> {
    let sig = QuadricSignature::new(a.p, a.q, a.n)?;
    let coeff: Coeff = a.coeff.into();
    let space = if a.space == Space::X { "X" } else { "Q" };
    let mut columns: Vec<(&str, GradedHomology)> = Vec::new();
    if a.method != Method::Oracle {
        columns.push(("formula", formula(a.space, &sig, coeff)?));
    }
    if a.method != Method::Formula {
        columns.push(("oracle", oracle(a, &sig)?));
    }
    let matched = columns.len() < 2 || columns[0].1 == columns[1].1;
    let verdict = if matched { "match" } else { "mismatch" };
    let cols: Vec<(&str, &GradedHomology)> = columns.iter().map(|(n, h)| (*n, h)).collect();
    let text = match a.format {
        Format::Table => {
            let mut t = render::homology_table(space, &sig, &cols);
            if a.method == Method::Both {
                t.push_str(verdict);
                t.push('\n');
            }
            t
        }
        Format::Json => {
            let value = if a.method == Method::Both {
                serde_json::json!({ "formula": cols[0].1, "oracle": cols[1].1, "match": matched })
            } else {
                serde_json::to_value(cols[0].1)?
            };
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Csv => {
            // The CSV schema has no verdict column; it goes to stderr.
            if a.method == Method::Both {
                eprintln!("{verdict}");
            }
            render::homology_csv(&sig, cols[cols.len() - 1].1)
        }
        Format::Latex => {
            let mut t = render::homology_latex(&cols);
            if a.method == Method::Both {
                t.push_str(&format!("% {verdict}\n"));
            }
            t
        }
    };
    print(&text)?;
    Ok(if matched { 0 } else { EXIT_MISMATCH })
}

fn cmd_table(a: &TableArgs) -> anyhow::Result<()> {
    let coeff: Coeff = a.coeff.into();
    let rows = enumerate_signatures(a.max_n)
        .into_iter()
        .map(|sig| Ok((sig, formula(a.space, &sig, coeff)?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let table = WideTable { coeff, top: a.max_n.saturating_sub(2), rows };
    let text = match a.format {
        Format::Table => table.text(),
        Format::Csv => table.csv(),
        Format::Latex => table.latex(),
        Format::Json => {
            let rows: Vec<_> =
                table.rows.iter().map(|(sig, h)| serde_json::json!({ "signature": sig, "homology": h })).collect();
            serde_json::to_string_pretty(&rows)? + "\n"
        }
    };
    print(&text)
}

fn cmd_verify(a: &VerifyArgs) -> anyhow::Result<u8> {
    if a.max_n < 3 {
        bail!(Error::InvalidSignature { p: 1, q: 1, n: a.max_n, reason: "--max-n must be at least 3".into() });
    }
    let budget = match a.budget {
        BudgetArg::Full => Budget::Full,
        BudgetArg::XOnly => Budget::XOnly,
        BudgetArg::FormulaOnly => Budget::FormulaOnly,
    };
    let reports = sweep(a.max_n, &VerifyConfig { budget, cap: a.cap, timings: a.timings });
    let text = match a.format {
        Format::Table => render::verify_text(&reports),
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
        Format::Csv => render::verify_csv(&reports),
        Format::Latex => bail!("verify reports are available as table, json or csv"),
    };
    print(&text)?;
    let failed = reports.iter().any(|r| r.has_failures()) || (a.strict && reports.iter().any(|r| r.has_skips()));
    Ok(if failed { EXIT_FAILURE } else { 0 })
}
