use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn uhf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uhf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn reports(out: &Output) -> Vec<Value> {
    let text = std::str::from_utf8(&out.stdout).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str::<Value>(text)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

#[test]
fn bounds_example_passes() {
    let out = uhf(&[
        "bounds",
        "--mass",
        "1",
        "--epsilon",
        "0.5",
        "--grid",
        "1000",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports = reports(&out);
    let sweeps: Vec<&Value> = reports
        .iter()
        .filter(|r| r["check"] == "bounds.global_estimate")
        .collect();
    assert_eq!(sweeps.len(), 1);
    assert_eq!(sweeps[0]["params"]["epsilon"], 0.5);
    assert!(reports.iter().all(|r| r["pass"] == true));
}

#[test]
fn localize_example_has_both_verdicts() {
    let out = uhf(&["localize", "--a", "1.0", "--a", "2.0", "--nmax", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = reports(&out);
    assert_eq!(reports.len(), 2);
    let note = |i: usize| reports[i]["note"].as_str().unwrap().to_string();
    assert!(note(0).starts_with("converged"), "{}", note(0));
    assert!(note(1).starts_with("diverging"), "{}", note(1));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = uhf(&["bounds", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(uhf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(uhf(&["bounds", "--mass", "-1"]).status.code(), Some(2));
    assert_eq!(
        uhf(&["bounds", "--config", "/nonexistent/uhf.conf"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn failing_checks_exit_with_one() {
    // no a-value is within tolerance zero of the shifted value on a finite sum
    let out = uhf(&["localize", "--a", "1.4", "--nmax", "5", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(reports(&out)[0]["pass"], false);
}

#[test]
fn flags_override_the_config_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "nmax = 40\na = 0.5, 3.0\nout = csv").unwrap();
    let path = file.path().to_str().unwrap();

    let out = uhf(&["localize", "--config", path]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,params"));
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains(r#""nmax"":40"#));

    let out = uhf(&["localize", "--config", path, "--a", "1.0", "--out", "json"]);
    let reports = reports(&out);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["params"]["a"], 1.0);
    assert_eq!(reports[0]["params"]["nmax"], 40);
}

fn without_runtime(out: &Output) -> Vec<Value> {
    let mut reports = reports(out);
    for r in &mut reports {
        r.as_object_mut().unwrap().remove("runtime_ms");
    }
    reports
}

#[test]
fn output_is_deterministic() {
    let args = ["bounds", "--grid", "200", "--seed", "11"];
    let a = without_runtime(&uhf(&args));
    let b = without_runtime(&uhf(&args));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let c = without_runtime(&uhf(&["bounds", "--grid", "200", "--seed", "12"]));
    assert_ne!(a, c);
}

#[test]
fn reports_are_sorted() {
    let out = uhf(&["dirac"]);
    let names: Vec<String> = reports(&out)
        .iter()
        .map(|r| r["check"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 4);
}

#[test]
fn report_all_passes_and_every_check_is_documented() {
    let out = uhf(&["report-all"]);
    assert_eq!(out.status.code(), Some(0));
    let readme = include_str!("../../../README.md");
    let reports = reports(&out);
    assert!(reports.len() >= 23);
    for r in &reports {
        let name = r["check"].as_str().unwrap();
        assert!(
            readme.contains(&format!("| `{name}` |")),
            "{name} missing from README"
        );
    }
}
