use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn ptorsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptorsion"))
        .args(args)
        .env_remove("PTORSION_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn divpoly_over_z_and_fp() {
    let o = ptorsion(&["divpoly", "--m", "3", "--ring", "Z"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3*x^4 + 6*s*x^2 + 12*t*x + -1*s^2\n");
    let o = ptorsion(&["divpoly", "--m", "3", "--p", "7"]);
    assert_eq!(stdout(&o), "3*x^4 + 6*s*x^2 + 5*t*x + 6*s^2\n");
    assert_eq!(ptorsion(&["divpoly", "--m", "0"]).status.code(), Some(2));
    assert_eq!(ptorsion(&["divpoly", "--m", "3", "--ring", "Fp"]).status.code(), Some(2));
}

#[test]
fn theta_and_eta_json() {
    let o = ptorsion(&["theta", "--p", "5"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["p"], 5);
    assert_eq!(v["a2"], "2*s");
    assert_eq!(v["a7"], "4*s^2*t");

    let o = ptorsion(&["eta", "--p", "5"]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(v["b"].as_object().unwrap().contains_key("b5"));
    assert!(v["c"].as_object().unwrap().contains_key("c24"));
}

#[test]
fn bad_primes_exit_with_two() {
    for args in [["theta", "--p", "4"], ["eta", "--p", "3"], ["ssj", "--p", "21"]] {
        let o = ptorsion(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn ssj_reports_fss() {
    let v = json(&ptorsion(&["ssj", "--p", "13"]));
    assert_eq!(v["fss"], "j + 8");
    assert_eq!(v["j_set"], serde_json::json!([5]));
}

#[test]
fn verify_emits_one_line_per_prime() {
    let o = ptorsion(&["verify", "--primes", "5,7,11", "--n", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, p) in lines.iter().zip([5, 7, 11]) {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["p"], p);
        assert_eq!(v["checks"].as_array().unwrap().len(), 10);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    }
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let cache = tempdir().unwrap();
    let dir = cache.path().to_str().unwrap();
    let args = ["verify", "--primes", "5,7,13", "--n", "2", "--seed", "3"];
    let a = ptorsion(&args);
    let b = ptorsion(&args);
    let mut cached: Vec<&str> = args.to_vec();
    cached.extend(["--cache-dir", dir]);
    let c = ptorsion(&cached);
    let d = ptorsion(&cached);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_budget_refusal() {
    let o = ptorsion(&["verify", "--primes", "31", "--budget", "low"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert!(o.stdout.is_empty());
}

#[test]
fn text_format_and_output_file() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = ptorsion(&["verify", "--primes", "5", "--format", "text", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p=5 n=1: pass"));
    assert!(text.contains("theta_structure"));
}

#[test]
fn specialize_summary() {
    let o = ptorsion(&["specialize", "--p", "7", "--samples", "40", "--n", "2", "--seed", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["samples"], 40);
    assert_eq!(v["summary"]["predicted_equals_observed"], true);
    assert_eq!(v["summary"]["predicted_divides_group_order"], true);
    assert!(v["summary"]["note"].as_str().unwrap().contains("perfect"));
    let again = ptorsion(&["specialize", "--p", "7", "--samples", "40", "--n", "2", "--seed", "5"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn specialize_rejects_non_power_field_size() {
    assert_eq!(ptorsion(&["specialize", "--p", "5", "--q", "4"]).status.code(), Some(2));
    let o = ptorsion(&["specialize", "--p", "5", "--q", "25", "--samples", "5"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["q"], 25);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(ptorsion(&["frobnicate"]).status.code(), Some(2));
}
