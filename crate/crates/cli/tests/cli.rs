use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn girdle(args: &[&str], json: Option<&Path>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_girdle"));
    cmd.args(args);
    if let Some(p) = json {
        cmd.arg("--json").arg(p);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json_report(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, _) = girdle(args, Some(&path));
    let text = std::fs::read_to_string(&path).unwrap();
    (code, serde_json::from_str(&text).unwrap(), text)
}

fn check_schema(v: &Value) {
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), 3);
    assert!(obj["command"].is_string());
    let checks = obj["checks"].as_array().unwrap();
    let all_pass = checks.iter().all(|c| c["pass"].as_bool().unwrap());
    assert_eq!(obj["status"], if all_pass { "pass" } else { "fail" });
    for c in checks {
        let c = c.as_object().unwrap();
        assert_eq!(c.len(), 5);
        for key in ["name", "expected", "actual", "source"] {
            assert!(c[key].is_string(), "{key}");
        }
        assert!(!c["source"].as_str().unwrap().is_empty());
    }
}

#[test]
fn prolong_step3_single_check() {
    let (code, v, _) = json_report(&["prolong", "--step", "3"]);
    assert_eq!(code, 0);
    check_schema(&v);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert!(checks[0]["name"].as_str().unwrap().contains("dim = 0"));
    assert_eq!(checks[0]["pass"], true);
}

#[test]
fn freeman_at_cone_point() {
    let (code, v, _) = json_report(&["model", "freeman", "--z", "3,4,5,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["actual"], "(2, 1, 0)");
}

#[test]
fn table1_reports_every_cell() {
    let (code, v, _) = json_report(&["verify", "table1"]);
    check_schema(&v);
    assert_eq!(v["checks"].as_array().unwrap().len(), 110);
    let deltas = v["checks"].as_array().unwrap().iter().filter(|c| c["expected"] != c["actual"]).count();
    assert_eq!(deltas, 2);
    assert_eq!(code, 0);
}

#[test]
fn every_subcommand_passes_with_schema() {
    let cases: &[&[&str]] = &[
        &["verify", "jacobi"],
        &["verify", "structeq"],
        &["cohomology", "--ell", "2", "--k", "1"],
        &["hodge", "--ell", "2", "--k", "2"],
        &["prolong", "--step", "all"],
        &["model", "quadric", "--point", "-1/2*i,3,4,5,-1/2*i"],
        &["model", "embed", "--z", "5,12,13,1,2,3"],
        &["model", "levi", "--z", "-4,3,5,2/5,0,7"],
        &["model", "cubic", "--z", "1,0,1"],
        &["model", "identities"],
        &["constraints"],
    ];
    for args in cases {
        let (code, v, _) = json_report(args);
        check_schema(&v);
        assert_eq!(v["status"], "pass", "{args:?}");
        assert_eq!(code, 0, "{args:?}");
    }
}

#[test]
fn failing_check_exits_one() {
    let (code, v, _) = json_report(&["model", "quadric", "--point", "1,0,0,0,0"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(girdle(&["bogus"], None).0, 2);
    assert_eq!(girdle(&["prolong"], None).0, 2);
    assert_eq!(girdle(&["prolong", "--step", "9"], None).0, 2);
    assert_eq!(girdle(&["model", "levi", "--z", "1,1,1"], None).0, 2);
    assert_eq!(girdle(&["model", "quadric", "--point", "1,2"], None).0, 2);
    assert_eq!(girdle(&["normalize", "--k", "2", "--input", "/nonexistent/file.json"], None).0, 2);
}

#[test]
fn normalize_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("torsion.json");
    let cochain = girdle_core::cochain::CochainSpace::new(2, 3).unwrap().basis()[0].clone();
    let file = girdle_core::report::CTorsionFile::from_cochain(&cochain);
    std::fs::write(&input, file.to_json()).unwrap();
    let out = dir.path().join("out.json");
    let (code, _) = girdle(&["normalize", "--k", "3", "--input", input.to_str().unwrap()], Some(&out));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    check_schema(&v);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);

    let (code, _) = girdle(&["normalize", "--k", "2", "--input", input.to_str().unwrap()], None);
    assert_eq!(code, 2);
    std::fs::write(&input, r#"{"k": 3, "coeffs": {"nonsense": "1"}}"#).unwrap();
    assert_eq!(girdle(&["normalize", "--k", "3", "--input", input.to_str().unwrap()], None).0, 2);
}

#[test]
fn json_output_is_deterministic() {
    for args in [&["constraints"][..], &["verify", "table1"], &["prolong", "--step", "all"]] {
        let (_, _, a) = json_report(args);
        let (_, _, b) = json_report(args);
        assert_eq!(a, b);
    }
}
