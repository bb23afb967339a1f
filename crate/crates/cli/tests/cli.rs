use heckoid::farey::{HitKind, RelatorReport, Slope};
use heckoid::search::read_jsonl;
use heckoid::slope_half::{enumerate_slope_half, read_csv, SlopeHalfRow};
use std::process::{Command, Output};

fn heckoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckoid")).args(args).env_remove("HECKOID_PRECISION").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&heckoid(&["slope-half", "--p-max", "2"])), 2);
    assert_eq!(code(&heckoid(&["slope-half", "--n-max", "1"])), 2);
    assert_eq!(code(&heckoid(&["no-such-command"])), 2);
    assert_eq!(code(&heckoid(&["check-gamma", "--p", "3", "--q", "3", "--poly", "1,x"])), 2);
    assert_eq!(code(&heckoid(&["check-gamma", "--p", "3", "--q", "3", "--poly", "1,0,1", "--root-index", "5"])), 2);
    assert_eq!(code(&heckoid(&["--precision", "8", "slope-half", "--n-max", "2"])), 2);
    assert_eq!(code(&heckoid(&["--help"])), 0);
}

#[test]
fn bounded_table_verifies_and_round_trips() {
    let dir = std::env::temp_dir().join(format!("heckoid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("t.csv");
    let o = heckoid(&["slope-half", "--n-max", "3", "--verify-golden", "-o", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows, enumerate_slope_half(30, 30, 3).unwrap());

    let json = heckoid(&["slope-half", "--n-max", "3", "--format", "json"]);
    assert_eq!(code(&json), 0);
    let back: Vec<SlopeHalfRow> = serde_json::from_str(stdout(&json)).unwrap();
    assert_eq!(back, rows);
    // byte-identical across runs
    let again = heckoid(&["slope-half", "--n-max", "3", "--format", "json"]);
    assert_eq!(json.stdout, again.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn full_table_reports_the_extra_rows() {
    let o = heckoid(&["slope-half", "--verify-golden"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("(3,18;1/2,9)_1") && err.contains("(3,12;1/2,12)_1"), "{err}");
    assert_eq!(read_csv(o.stdout.as_slice()).unwrap().len(), 57);
}

#[test]
fn check_gamma_outcomes() {
    // real γ = -3: the criterion does not apply
    let o = heckoid(&["check-gamma", "--p", "3", "--q", "3", "--poly", "3,1"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["status"], "not_applicable");

    let o = heckoid(&["check-gamma", "--p", "3", "--q", "3", "--poly", "1,1,1", "--root-index", "1"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["all_pass"], false);

    // a point emitted by a scan passes on its own
    let scan = heckoid(&["scan", "--p", "3", "--q", "3", "--re", "-3,0", "--im", "0,2", "--max-denominator", "0"]);
    assert_eq!(code(&scan), 0);
    let pts = read_jsonl(scan.stdout.as_slice()).unwrap();
    assert!(!pts.is_empty());
    let poly: Vec<String> = pts[0].gamma.min_poly.coeffs().iter().map(|c| c.to_string()).collect();
    let idx = if pts[0].gamma.im > 0.0 { "1" } else { "0" };
    let o = heckoid(&["check-gamma", "--p", "3", "--q", "3", "--poly", &poly.join(","), "--root-index", idx]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn farey_examples() {
    let o = heckoid(&["farey", "--p", "3", "--q", "3", "--poly", "3,1", "--max-denominator", "20"]);
    assert_eq!(code(&o), 0);
    let rep: RelatorReport = serde_json::from_str(stdout(&o)).unwrap();
    let half = rep.hits.iter().find(|h| h.slope == Slope::half()).expect("slope 1/2 hit");
    assert!(half.certified && half.n == 3 && half.kind == HitKind::Elliptic);

    let o = heckoid(&["farey", "--p", "3", "--q", "3", "--poly", "-5,1", "--max-denominator", "20"]);
    assert_eq!(code(&o), 0);
    let rep: RelatorReport = serde_json::from_str(stdout(&o)).unwrap();
    assert!(rep.hits.is_empty());
    assert_eq!(o.stdout, heckoid(&["farey", "--p", "3", "--q", "3", "--poly", "-5,1", "--max-denominator", "20"]).stdout);
}

#[test]
fn parabolic_scan_formats() {
    let args = ["scan-parabolic", "--re", "-2,2", "--im", "0,2", "--max-denominator", "6"];
    let a = heckoid(&args);
    assert_eq!(code(&a), 0);
    let pts = read_jsonl(a.stdout.as_slice()).unwrap();
    assert!(pts.iter().all(|p| p.rho.as_ref().unwrap().re >= 0.0));
    assert_eq!(a.stdout, heckoid(&args).stdout);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let c = heckoid(&csv_args);
    let rows = heckoid::search::read_point_cloud(c.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), pts.len());
}
