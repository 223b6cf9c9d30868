use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn demo_file(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "demo", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn iorder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iorder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = iorder(&all);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), value)
}

fn check<'a>(report: &'a Value, group: &str, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["group"] == group && c["name"] == name)
        .unwrap_or_else(|| panic!("no check {group}/{name}"))
}

#[test]
fn bicyclic_conditions_all_pass() {
    let (code, report) = json(&["check", &demo_file("bicyclic-n0.cfg")]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "pass");
    for name in ["A", "B(i)", "B(ii)", "C", "straight", "lclass"] {
        assert_eq!(
            check(&report, "conditions", name)["status"],
            "pass",
            "{name}"
        );
    }
}

#[test]
fn even_powers_fail_condition_a_at_one_one() {
    let (code, report) = json(&["check", &demo_file("even-counterexample.cfg")]);
    assert_eq!(code, 1);
    let a = check(&report, "conditions", "A");
    assert_eq!(a["status"], "fail");
    let failing: Vec<&Value> = a["counterexamples"].as_array().unwrap().iter().collect();
    assert!(failing
        .iter()
        .any(|w| w["indices"] == serde_json::json!([1, 1])));
    assert_eq!(report["coverage"], serde_json::json!([2, 4, 6, 8]));
}

#[test]
fn build_writes_report_with_class_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = iorder(&[
        "build",
        &demo_file("reilly-z2.cfg"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["command"], "build");
    assert_eq!(report["quotient"]["classes"], 338);
    assert_eq!(report["quotient"]["certified"], true);
}

#[test]
fn condition_selection_limits_the_report() {
    let (code, report) = json(&[
        "check",
        &demo_file("rightzero-counterexample.cfg"),
        "--conditions",
        "B",
    ]);
    assert_eq!(code, 1);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["B(i)", "B(ii)"]);
    let b = check(&report, "conditions", "B(i)");
    assert_eq!(
        b["counterexample"]["elements"],
        serde_json::json!(["u", "v", "u"])
    );
}

#[test]
fn input_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.cfg");
    std::fs::write(&empty, "").unwrap();
    let out = iorder(&["check", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing [group] section"));

    assert_eq!(
        iorder(&["check", "/definitely/not/here.cfg"]).status.code(),
        Some(3)
    );
    assert_eq!(iorder(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        iorder(&["check", &demo_file("bicyclic-n0.cfg"), "--bogus"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        iorder(&[
            "check",
            &demo_file("bicyclic-n0.cfg"),
            "--conditions",
            "A,D"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        iorder(&["compare", &demo_file("rightzero-counterexample.cfg")])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn demo_reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    for (path, workers) in [(&first, "1"), (&second, "3")] {
        let out = Command::new(env!("CARGO_BIN_EXE_iorder"))
            .args([
                "demo",
                "reilly-z4-doubling",
                "--out",
                path.to_str().unwrap(),
            ])
            .env("IORDER_WORKERS", workers)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn sampled_associativity_is_reproducible() {
    let args = [
        "build",
        &demo_file("bicyclic-n0.cfg"),
        "--sample",
        "2000",
        "--seed",
        "11",
    ];
    let (code, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let assoc = check(&a, "quotient", "associativity");
    assert_eq!(
        assoc["checked"].as_u64().unwrap() + assoc["skipped"].as_u64().unwrap(),
        2000
    );
}

#[test]
fn demo_without_name_lists_presets() {
    let out = iorder(&["demo"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "bicyclic-n0",
        "reilly-z2",
        "reilly-z4-doubling",
        "even-counterexample",
        "rightzero-counterexample",
    ] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn validate_reports_laws_and_closure() {
    let (code, report) = json(&["validate", &demo_file("reilly-z4-doubling.cfg")]);
    assert_eq!(code, 0);
    assert_eq!(
        check(&report, "validate", "window-associativity")["status"],
        "pass"
    );
    assert_eq!(
        check(&report, "laws", "associativity")["checked"],
        100 * 100 * 100
    );
}
