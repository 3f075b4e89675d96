use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TABLE: &str = r#"{"mu00":0.25,"mu01":0.1,"mu10":0.35,"mu11":0.3}"#;
const PRODUCT: &str = r#"{"mu00":0.3,"mu01":0.2,"mu10":0.3,"mu11":0.2}"#;

fn persuade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_persuade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_prior(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json_ok(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn close(v: &Value, x: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - x).abs() <= tol
}

#[test]
fn solve_naive_table_prior() {
    let dir = TempDir::new().unwrap();
    let prior = write_prior(&dir, "t.json", TABLE);
    let v = json_ok(&persuade(&["solve", "--prior", p(&prior), "--receiver", "naive"]));
    assert_eq!(v["signal"]["p01"].as_f64().unwrap(), 0.928571428571429);
    assert_eq!(v["case"], "NaiveC");
    assert_eq!(v["constraint_binding"], true);
    assert!(close(&v["sender_payoff"], 0.907142857142857, 1e-15));
    assert!(close(&v["receiver_payoff"], 0.642857142857143, 1e-15));
}

#[test]
fn solve_text_format() {
    let dir = TempDir::new().unwrap();
    let prior = write_prior(&dir, "t.json", TABLE);
    let out = persuade(&["solve", "--prior", p(&prior), "--receiver", "rational", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("case: Rational"));
    assert!(text.contains("sender_payoff: 0.95"));
}

#[test]
fn product_prior_gives_same_signal_for_both_receivers() {
    let dir = TempDir::new().unwrap();
    let prior = write_prior(&dir, "p.json", PRODUCT);
    let r = json_ok(&persuade(&["solve", "--prior", p(&prior), "--receiver", "rational"]));
    let n = json_ok(&persuade(&["solve", "--prior", p(&prior), "--receiver", "naive"]));
    for key in ["signal", "sender_payoff", "receiver_payoff", "constraint_binding", "regime"] {
        assert_eq!(r[key], n[key], "{key}");
    }
}

#[test]
fn solve_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let prior_path = write_prior(&dir, "t.json", TABLE);
    let prior = persuasion::JointPrior::new(0.25, 0.1, 0.35, 0.3).unwrap();
    for receiver in ["rational", "naive"] {
        let v = json_ok(&persuade(&["solve", "--prior", p(&prior_path), "--receiver", receiver]));
        let signal: persuasion::DirectSignal = serde_json::from_value(v["signal"].clone()).unwrap();
        let sender = persuasion::sender_payoff(&prior, &signal);
        let receiver = persuasion::receiver_payoff(&prior, &signal);
        let sig15 = |x: f64| format!("{x:.14e}");
        assert_eq!(sig15(sender), sig15(v["sender_payoff"].as_f64().unwrap()));
        assert_eq!(sig15(receiver), sig15(v["receiver_payoff"].as_f64().unwrap()));
    }
}

#[test]
fn default_action_violation_exits_2() {
    let dir = TempDir::new().unwrap();
    let prior = write_prior(&dir, "bad.json", r#"{"mu00":0.2,"mu01":0.3,"mu10":0.2,"mu11":0.3}"#);
    let out = persuade(&["solve", "--prior", p(&prior), "--receiver", "naive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DefaultActionViolated"));
}

#[test]
fn malformed_prior_file_exits_2() {
    let dir = TempDir::new().unwrap();
    for body in [r#"{"mu00":0.25,"mu01":0.1,"mu10":0.35}"#, "not json", r#"[[0.25,0.1],[0.35,0.3]]"#] {
        let prior = write_prior(&dir, "m.json", body);
        let out = persuade(&["welfare", "--prior", p(&prior)]);
        assert_eq!(out.status.code(), Some(2), "{body}");
    }
    let prior = write_prior(&dir, "s.json", r#"{"mu00":0.25,"mu01":0.1,"mu10":0.35,"mu11":0.4}"#);
    let out = persuade(&["welfare", "--prior", p(&prior)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SumNotOne"));
}

#[test]
fn missing_prior_file_exits_1() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("absent.json");
    let out = persuade(&["solve", "--prior", p(&missing), "--receiver", "naive"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn welfare_values() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (TABLE, -0.042857142857143, true),
        (PRODUCT, 0.0, false),
        (r#"{"mu00":0.20,"mu01":0.30,"mu10":0.35,"mu11":0.15}"#, 0.136363636363636, true),
    ];
    for (body, nu, strict) in cases {
        let prior = write_prior(&dir, "w.json", body);
        let v = json_ok(&persuade(&["welfare", "--prior", p(&prior)]));
        assert!(close(&v["nu"], nu, 1e-14), "{body}: {}", v["nu"]);
        assert_eq!(v["strict"], strict);
    }
}

#[test]
fn verify_small_run_passes_and_is_deterministic() {
    let a = persuade(&["verify", "--trials", "20", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let b = persuade(&["verify", "--trials", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let one = persuade(&["verify", "--trials", "1", "--seed", "11"]);
    assert_eq!(one.status.code(), Some(0));
}

#[test]
fn verify_zero_tolerance_is_misuse() {
    let out = persuade(&["verify", "--trials", "50", "--seed", "1", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    let prior_line = text.lines().last().unwrap();
    let cells: persuasion::Cells = serde_json::from_str(prior_line).unwrap();
    assert!(persuasion::JointPrior::from_cells(cells).is_ok());
}

#[test]
fn verify_rejects_zero_trials() {
    assert_eq!(persuade(&["verify", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn sweep_single_point_matches_table() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("one.csv");
    let out = persuade(&["sweep", "--m-sigma1", "0.65", "--m-rho1", "0.40", "--c", "-0.04", "--out", p(&out_path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "m_sigma1,m_rho1,c,case_rational,case_naive,v_rational,v_naive,u_rational,u_naive,nu,strict"
    );
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[1],
        "0.650000000000000,0.400000000000000,-0.040000000000000,Rational,NaiveC,\
         0.950000000000000,0.907142857142857,0.600000000000000,0.642857142857143,-0.042857142857143,true"
    );
    assert!(!csv.contains('\r'));
}

#[test]
fn sweep_grid_skips_infeasible_points() {
    let out = persuade(&["sweep", "--m-sigma1", "0.3:0.7:0.2", "--m-rho1", "0.1:0.4:0.15", "--c", "-0.2:0.2:0.1"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows = csv.lines().filter(|l| !l.starts_with('#')).count() - 1;
    let footer = csv.lines().find(|l| l.starts_with("# skipped"));
    let skipped: usize = footer
        .map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap())
        .unwrap_or(0);
    assert!(rows <= 45);
    assert_eq!(rows + skipped, 45);
    assert!(skipped > 0);
}

#[test]
fn sweep_bad_range_exits_2() {
    for c in ["1:2", "0.1:0.0:0.01", "a:b:c", "-0.1:0.1:0"] {
        let out = persuade(&["sweep", "--m-sigma1", "0.65", "--m-rho1", "0.4", "--c", c]);
        assert_eq!(out.status.code(), Some(2), "{c}");
    }
    let out = persuade(&["sweep", "--m-sigma1", "0.65", "--m-rho1", "0.6", "--c", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_checks_samples_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let prior = write_prior(&dir, "t.json", TABLE);
    let zero = persuade(&["simulate", "--prior", p(&prior), "--receiver", "naive", "--samples", "0"]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("InvalidSampleCount"));

    let args = ["simulate", "--prior", p(&prior), "--receiver", "naive", "--samples", "200000", "--seed", "9"];
    let a = persuade(&args);
    let b = persuade(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let se = v["u_se"].as_f64().unwrap();
    assert!(close(&v["u_hat"], 0.642857142857143, 3.0 * se));
}

#[test]
fn simulate_explicit_signal() {
    let dir = TempDir::new().unwrap();
    let prior = write_prior(&dir, "t.json", TABLE);
    let v = json_ok(&persuade(&[
        "simulate", "--prior", p(&prior), "--receiver", "rational", "--signal", "0,0.5,1,1", "--samples", "1000",
    ]));
    assert_eq!(v["signal"]["p01"].as_f64().unwrap(), 0.5);
    assert!(close(&v["v"], 0.95, 1e-15));
    let bad = persuade(&["simulate", "--prior", p(&prior), "--receiver", "rational", "--signal", "0,0.5,1"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = persuade(&["simulate", "--prior", p(&prior), "--receiver", "rational", "--signal", "0,1.5,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
}
