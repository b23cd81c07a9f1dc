use std::process::{Command, Output};

use quadhom::graded::{Coeff, FgAbelianGroup, GradedHomology};
use quadhom::homology_oracle::homology_of_complex;
use quadhom::simplicial::read_facets;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadhom"))
        .args(args)
        .env_remove("QUADHOM_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn rational_formula_for_quadric() {
    let o =
        run(&["homology", "--p", "2", "--q", "3", "--n", "7", "--space", "Q", "--coeff", "q", "--method", "formula"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "H_*(Q_{2,3}^7; ℚ)\nk  formula\n0  ℚ\n3  ℚ\n");
}

#[test]
fn both_methods_match_on_the_smallest_cover() {
    let o = run(&["homology", "--p", "1", "--q", "1", "--n", "3", "--space", "X", "--coeff", "z", "--method", "both"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("1  ℤ^3      ℤ^3"), "{out}");
    assert!(out.ends_with("match\n"));
}

#[test]
fn zero_p_is_referred_to_projective_space() {
    let o = run(&["homology", "--p", "0", "--q", "3", "--n", "5", "--space", "Q", "--method", "formula"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ℝP^1"));
}

#[test]
fn invalid_and_non_degenerate_signatures() {
    assert_eq!(code(&run(&["homology", "--p", "3", "--q", "3", "--n", "5"])), 2);
    assert_eq!(code(&run(&["homology", "--p", "2", "--q", "3", "--n", "5", "--space", "X"])), 2);
    // Mod 2 homology of a non-degenerate quadric has a closed form.
    let o = run(&["homology", "--p", "2", "--q", "3", "--n", "5", "--coeff", "z2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn json_round_trips() {
    let o = run(&[
        "homology", "--p", "1", "--q", "2", "--n", "5", "--coeff", "z", "--method", "oracle", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let h: GradedHomology = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = GradedHomology::new(
        Coeff::Integer,
        [(0, FgAbelianGroup::free(1)), (1, FgAbelianGroup::new(0, [2])), (3, FgAbelianGroup::free(1))],
    )
    .unwrap();
    assert_eq!(h, expected);
    assert_eq!(serde_json::to_string_pretty(&h).unwrap() + "\n", stdout(&o));

    let both = run(&["homology", "--p", "1", "--q", "2", "--n", "5", "--method", "both", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&both)).unwrap();
    assert_eq!(v["match"], true);
    let f: GradedHomology = serde_json::from_value(v["formula"].clone()).unwrap();
    assert_eq!(f, expected);
}

#[test]
fn csv_columns() {
    let o = run(&["homology", "--p", "1", "--q", "1", "--n", "4", "--coeff", "z", "--format", "csv"]);
    assert_eq!(stdout(&o), "p,q,n,degree,rank,torsion\n1,1,4,0,1,\n1,1,4,1,0,2\n1,1,4,2,1,\n");
}

#[test]
fn latex_homology() {
    let o = run(&["homology", "--p", "1", "--q", "1", "--n", "3", "--method", "both", "--format", "latex"]);
    let out = stdout(&o);
    assert!(out.starts_with("\\begin{tabular}{rll}"));
    assert!(out.contains("1 & $\\mathbb{Z}^{2}$ & $\\mathbb{Z}^{2}$ \\\\"));
    assert!(out.ends_with("% match\n"));
}

#[test]
fn infeasible_oracle_exits_3_and_flag_overrides_env() {
    let args = ["homology", "--p", "1", "--q", "1", "--n", "4", "--method", "oracle"];
    let o = Command::new(env!("CARGO_BIN_EXE_quadhom")).args(args).env("QUADHOM_ORACLE_CAP", "10").output().unwrap();
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_quadhom"))
        .args(args)
        .args(["--cap", "1000000"])
        .env("QUADHOM_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn dumped_complex_reproduces_homology() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q113.facets");
    let o = run(&[
        "homology",
        "--p",
        "1",
        "--q",
        "1",
        "--n",
        "3",
        "--method",
        "oracle",
        "--dump-complex",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let c = read_facets(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let h = homology_of_complex(&c, Coeff::Integer).unwrap().homology;
    assert_eq!(h, GradedHomology::from_ranks(Coeff::Integer, [(0, 1), (1, 2)]));
}

#[test]
fn table_rows() {
    let o = run(&["table", "--max-n", "4", "--coeff", "z2", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 3);
    let o = run(&["table", "--max-n", "8", "--coeff", "z", "--format", "latex"]);
    let row =
        "$(2,4,8)$ & $\\mathbb{Z}$ & $\\mathbb{Z}/2$ & $0$ & $\\mathbb{Z}$ & $0$ & $\\mathbb{Z}$ & $\\mathbb{Z}$ \\\\";
    assert!(stdout(&o).lines().any(|l| l == row));
    let o = run(&["table", "--max-n", "3"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('(') && !l.starts_with("(p")).count(), 1);
    let o = run(&["table", "--max-n", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&run(&["verify", "--max-n", "5"])), 0);
    let o = run(&["verify", "--max-n", "8", "--budget", "x-only"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 failed"));
    assert!(!stdout(&o).contains(", 0 skipped"));
    assert_eq!(code(&run(&["verify", "--max-n", "8", "--budget", "x-only", "--strict"])), 1);
    assert_eq!(code(&run(&["verify", "--max-n", "2"])), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["verify", "--max-n", "5", "--format", "json"][..],
        &["table", "--max-n", "9", "--coeff", "z", "--format", "csv"][..],
        &["homology", "--p", "2", "--q", "2", "--n", "6", "--method", "both", "--format", "json"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), 0);
    }
}
