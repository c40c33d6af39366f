use std::path::Path;
use std::process::{Command, Output};

use eicp::report::ReportDocument;
use tempfile::TempDir;

const WORKED_EXAMPLE: &str = r#"{"n": 3,
  "A": [[14, 1, 1], [1, 11, -2], [1, -2, 13]],
  "B": [[6, 0, 0], [0, 10, 2], [0, 2, 10]]}"#;

const NOT_COPOSITIVE: &str = r#"{"n": 2, "A": [[1, -3], [-3, 1]]}"#;

fn eicp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eicp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(args: &[&str]) -> ReportDocument {
    let o = eicp(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    ReportDocument::from_json(&stdout(&o)).unwrap()
}

#[test]
fn localize_k1_and_k2_hulls() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex1.json", WORKED_EXAMPLE);
    let doc = json_report(&["localize", &f, "--sets", "k1", "--json"]);
    let loc = doc.localization.unwrap();
    assert_eq!(loc.hull_k1.lo(), 0.75);
    assert!((loc.hull_k1.hi() - 8.0 / 3.0).abs() < 1e-15);
    assert!(loc.k2.is_none() && loc.k1_cop.is_none());

    let doc = json_report(&["localize", &f, "--sets", "k2", "--json"]);
    let hull = doc.localization.unwrap().hull_k2.unwrap();
    assert!((hull.lo() - (31.0 - 127f64.sqrt()) / 24.0).abs() < 1e-12);
    assert!((hull.hi() - (109.0 + 1081f64.sqrt()) / 60.0).abs() < 1e-12);
}

#[test]
fn localize_renders_number_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex1.json", WORKED_EXAMPLE);
    let o = eicp(&["localize", &f]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("K2    = [0.822107, 2.364643]"), "{text}");
    assert!(text.lines().all(|l| l.chars().count() <= 80));
}

#[test]
fn not_copositive_needs_shift() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "nc.json", NOT_COPOSITIVE);
    let o = eicp(&["localize", &f, "--sets", "k2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("copositive"));

    let doc = json_report(&["localize", &f, "--sets", "k2", "--shift", "auto", "--json"]);
    assert!(doc.shift.unwrap() > 0.0);
    assert!(doc.localization.unwrap().k2.is_some());
    // K1 alone needs no copositivity.
    assert!(eicp(&["localize", &f, "--sets", "k1"]).status.success());
}

#[test]
fn back_shifted_sets_keep_membership() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex1.json", WORKED_EXAMPLE);
    let spec = json_report(&["spectrum", &f, "--json"]);
    let values = spec.spectrum.unwrap().values;
    let plain = json_report(&["localize", &f, "--json"]).localization.unwrap();
    for shift in ["auto", "0.5", "3"] {
        let shifted = json_report(&["localize", &f, "--shift", shift, "--json"])
            .localization
            .unwrap();
        for &v in &values {
            for (a, b) in [
                (&plain.k1, &shifted.k1),
                (plain.k1_cop.as_ref().unwrap(), shifted.k1_cop.as_ref().unwrap()),
                (plain.k2.as_ref().unwrap(), shifted.k2.as_ref().unwrap()),
            ] {
                assert_eq!(a.contains(v, 1e-7), b.contains(v, 1e-7));
            }
        }
    }
}

#[test]
fn spectrum_lists_example_supports() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex1.json", WORKED_EXAMPLE);
    let o = eicp(&["spectrum", &f]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("5 complementarity eigenvalue(s)"));
    for s in ["{2,3}", "{1}", "{1,2}", "{1,3}", "{1,2,3}"] {
        assert!(text.contains(&format!("support {s}\n")), "{s}: {text}");
    }
    let doc = json_report(&["spectrum", &f, "--json", "--tol-feas", "1e-7"]);
    assert_eq!(doc.tolerances["feas_tol"], 1e-7);
    assert_eq!(doc.verdicts.unwrap().pi_in_k2, Some(true));
}

#[test]
fn spectrum_of_diagonal_instance() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "d.json", r#"{"n": 3, "A": [[2,0,0],[0,6,0],[0,0,3]], "B": [[1,0,0],[0,2,0],[0,0,3]]}"#);
    let vals = json_report(&["spectrum", &f, "--json"]).spectrum.unwrap().values;
    assert_eq!(vals, vec![1.0, 2.0, 3.0]);
}

#[test]
fn size_gate_exit_code() {
    let n = 20;
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let r: Vec<&str> = (0..n).map(|j| if i == j { "1" } else { "0" }).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "big.json", &format!(r#"{{"n": {n}, "A": [{}]}}"#, rows.join(",")));
    assert_eq!(eicp(&["spectrum", &f]).status.code(), Some(4));
    assert!(eicp(&["spectrum", &f, "--nmax", "3"]).status.code() == Some(4));
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"n": 2, "A": [[1, 2], [3, 1]]}"#);
    assert_eq!(eicp(&["check", &f]).status.code(), Some(2));
    assert_eq!(eicp(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn check_require_flags() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "nc.json", NOT_COPOSITIVE);
    assert!(eicp(&["check", &f, "--require", "b-sdd,b-pd"]).status.success());
    assert_eq!(eicp(&["check", &f, "--require", "a-cop"]).status.code(), Some(3));
    let doc = json_report(&["check", &f, "--json"]);
    assert!(!doc.certificates.a.copositivity.is_copositive());
    assert!(doc.input.b_defaulted);
}

#[test]
fn family_emits_instance_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p4.json");
    let p = path.to_str().unwrap();
    assert!(eicp(&["family", "--prop", "4", "--n", "3", "--eps", "2", "--emit", p]).status.success());
    let inst: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(inst["A"][0], serde_json::json!([3.0, 1.0, 1.0]));
    assert_eq!(inst["B"][1], serde_json::json!([-1.0, 3.0, -1.0]));
    let side = dir.path().join("p4.json.expected.json");
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(side).unwrap()).unwrap();
    assert_eq!(side["expected_gamma"], serde_json::json!([0.5, 5.0]));

    let doc = json_report(&["localize", p, "--json"]);
    assert_eq!(doc.localization.unwrap().hull_k1.lo(), 1.0);

    let o = eicp(&["family", "--prop", "5", "--n", "3", "--beta", "2", "--R", "1", "--c", "1"]);
    let inst: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(inst["B"][0], serde_json::json!([2.0, 0.5, 0.5]));
    assert_eq!(inst["A"], inst["B"]);
}

#[test]
fn family_parameter_errors_exit_5() {
    assert_eq!(eicp(&["family", "--prop", "4", "--n", "3", "--eps", "1"]).status.code(), Some(5));
    assert_eq!(eicp(&["family", "--prop", "5", "--n", "3", "--beta", "1", "--R", "2", "--c", "1"]).status.code(), Some(5));
    assert_eq!(eicp(&["family", "--prop", "4", "--n", "3"]).status.code(), Some(5));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_eicp"))
        .args(["check", "-", "--json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(WORKED_EXAMPLE.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert!(doc.certificates.b.is_sdd && doc.certificates.a.is_pd);
    assert!(!Path::new("-").exists());
}
