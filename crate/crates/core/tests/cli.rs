use std::path::PathBuf;
use std::process::{Command, Output};

use bpscal::cli_io::{load_problem, Outcome, RunReport, TheoremOutcome};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn bpscal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpscal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    RunReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn verify_peff_on_standard_fixture() {
    let f = fixture("standard.json");
    let out = bpscal(&[
        "verify-theorems",
        "--theorem",
        "peff",
        "--problem",
        f.to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r.outcome, Outcome::Success);
    assert_eq!(r.theorems.len(), 3);
    assert!(r.theorems.iter().all(|t| matches!(t, TheoremOutcome::Certified { .. })));
}

#[test]
fn weff_with_l1_orthant_reports_hypothesis_failure() {
    let f = fixture("standard.json");
    let out = bpscal(&["verify-theorems", "--theorem", "weff", "--problem", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert!(
        matches!(&r.theorems[0], TheoremOutcome::HypothesisFailed { condition, .. } if condition == "S_-K is solid")
    );
}

#[test]
fn check_cone_reports_sharp_membership() {
    let f = fixture("standard.json");
    let out = bpscal(&[
        "check-cone",
        "--problem",
        f.to_str().unwrap(),
        "--xstar",
        "2,2",
        "--alpha",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let sharp = r
        .aug_dual
        .iter()
        .find(|a| a.class == bpscal::augdual::AugDualClass::ASharp)
        .unwrap();
    assert_eq!(sharp.verdict, bpscal::augdual::Verdict::Holds);
    // A pair outside K^{a+}: x* = (1, -1) cannot be nonnegative on e2.
    let out = bpscal(&[
        "check-cone",
        "--problem",
        f.to_str().unwrap(),
        "--xstar",
        "1,-1",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)
        .aug_dual
        .iter()
        .all(|a| a.verdict == bpscal::augdual::Verdict::Fails));
}

#[test]
fn missing_problem_is_a_usage_error() {
    let out = bpscal(&["verify-theorems", "--theorem", "peff"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--problem") && err.contains("Usage"), "{err}");
    assert_eq!(bpscal(&[]).status.code(), Some(1));
    assert_eq!(bpscal(&["--help"]).status.code(), Some(0));
}

#[test]
fn schema_errors_exit_1_with_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "cone": {"kind": "bishop_phelps", "xstar": [1, 1], "alpha": -1, "psi": {"kind": "l1"}},
            "seminorm": {"kind": "l1"}, "source": {"images": [[0, 0]]}}"#,
    )
    .unwrap();
    let out = bpscal(&["solve-vector", "--problem", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/cone/alpha"));
    let out = bpscal(&[
        "solve-vector",
        "--problem",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_rows_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.csv");
    let f = fixture("dominated.json");
    let out = bpscal(&[
        "report",
        "--problem",
        f.to_str().unwrap(),
        "--phi",
        "seminorm-linear",
        "--xstar",
        "2,2",
        "--alpha",
        "1",
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let rows = RunReport::rows_from_csv(&text).unwrap();
    assert_eq!(rows.len(), 5);
    let eff: Vec<&str> = rows
        .iter()
        .filter(|r| r.in_eff == Some(true))
        .map(|r| r.label.as_str())
        .collect();
    assert_eq!(eff, ["a", "b", "c"]);
    // L1 on the orthant: the weak set needs an interior, which exists.
    assert!(rows
        .iter()
        .all(|r| r.in_weff.is_some() && r.in_peff.is_some() && r.value.is_some()));
}

#[test]
fn solve_scalar_gerstewitz_paths_agree() {
    let f = fixture("grid_l_inf.json");
    let out = bpscal(&[
        "solve-scalar",
        "--problem",
        f.to_str().unwrap(),
        "--phi",
        "gerstewitz",
        "--k",
        "1,1",
        "--a",
        "-1,-1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let s = r.scalar.unwrap();
    assert!(!s.minimizers.is_empty());
    let p = load_problem(&f).unwrap();
    assert_eq!(p.len(), 25);
    let eff = bpscal::vopt::eff_set(&p).unwrap();
    assert!(s.minimizers.iter().all(|m| eff.contains(m)));
}

#[test]
fn separate_finds_a_verified_pair() {
    let f = fixture("dominated.json");
    let out = bpscal(&["separate", "--problem", f.to_str().unwrap(), "--xbar", "b"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!(r.certificate.unwrap().conclusions.passed());
    // A dominated point has K-directions in A, so no strict pair exists.
    let out = bpscal(&["separate", "--problem", f.to_str().unwrap(), "--xbar", "d"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn timing_is_opt_in() {
    let f = fixture("standard.json");
    let plain = report(&bpscal(&["solve-vector", "--problem", f.to_str().unwrap()]));
    assert!(plain.timing_ms.is_none());
    let timed = report(&bpscal(&["solve-vector", "--problem", f.to_str().unwrap(), "--timing"]));
    assert!(timed.timing_ms.is_some());
}

#[test]
fn json_report_round_trips() {
    let f = fixture("bishop_phelps.json");
    let out = bpscal(&[
        "verify-theorems",
        "--theorem",
        "henig1",
        "--problem",
        f.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let r = RunReport::from_json(&text).unwrap();
    assert_eq!(r.to_json(), text);
}
