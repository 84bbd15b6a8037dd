use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_discknot"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)));
    validate(&v);
    (v, o.status.code().unwrap())
}

fn schema() -> &'static jsonschema::JSONSchema {
    static S: OnceLock<jsonschema::JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        jsonschema::JSONSchema::options()
            .with_draft(jsonschema::Draft::Draft202012)
            .compile(&doc)
            .expect("schema compiles")
    })
}

fn validate(v: &Value) {
    if let Err(errors) = schema().validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
}

#[test]
fn invariants_of_brieskorn_pham() {
    let (v, code) = json(&["invariants", "--family", "BP", "--nu", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["mu"], 6);
    assert_eq!(v["results"]["sigma"], 3);
    assert_eq!(v["results"]["oracle_agrees"], true);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["subcommand"], "invariants");
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn invariants_of_a2() {
    let (v, code) = json(&["invariants", "--P", "0", "--Q", "x^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["mu"], 2);
    assert_eq!(v["results"]["sigma"], 1);
    let o = run(&["invariants", "--P", "0", "--Q", "x^2"]);
    assert!(stdout(&o).contains("mu = 2\nsigma = 1\n"));
}

#[test]
fn invariants_of_arnold_families() {
    let (v, code) = json(&["invariants", "--family", "jki", "--k", "3", "--i", "2", "--unit", "2 - x"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["sigma"], 6);
    let (v, code) = json(&["invariants", "--family", "e6k1", "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["sigma"], 9);
    assert_eq!(run(&["invariants", "--family", "jki", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_exit_two() {
    let o = run(&["invariants", "--P", "x^^2", "--Q", "x^3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("syntax error at column 3"), "{err}");
    let (v, code) = json(&["invariants", "--P", "x^^2", "--Q", "x^3"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["code"], "parse");
    assert_eq!(run(&["invariants", "--P", "x*t", "--Q", "x^3"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--P", "1 + x", "--Q", "x^3"]).status.code(), Some(2));
}

#[test]
fn branches_case_c_with_modified_q() {
    let (v, code) = json(&["branches", "--nu", "5", "--m", "4", "--s", "0"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["case"]["label"], "C");
    assert_eq!(r["branch_count"], 4);
    assert_eq!(r["verdict"]["reduced"], true);
    assert_eq!(r["unfolding"]["q"], "x^4");
    let lead: Vec<&Value> = r["pieces"].as_array().unwrap().iter().map(|p| &p["u"]["essential_exponents"]).collect();
    assert!(lead.contains(&&serde_json::json!(["2", "7/3"])), "{lead:?}");
}

#[test]
fn branches_case_c_without_q_is_not_reduced() {
    let (v, code) = json(&["branches", "--nu", "5", "--m", "4", "--s", "0", "--no-q"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"]["reduced"], false);
    assert_eq!(v["results"]["verdict"]["status"], "not_reduced");
}

#[test]
fn branches_case_a() {
    let (v, code) = json(&["branches", "--nu", "3", "--m", "3", "--s", "1/10"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["case"]["label"], "A");
    assert_eq!(r["branch_count"], 2);
    assert_eq!(r["unfolding"]["s"], "1/10");
    let faces = r["faces"].as_array().unwrap();
    assert!(faces.iter().any(|f| f["lambda"] == "3/5"));
    let u: Vec<&Value> = r["pieces"].as_array().unwrap().iter().map(|p| &p["u"]["leading_exponent"]).collect();
    assert!(u.contains(&&Value::from("12/5")), "{u:?}");
    assert_eq!(r["verdict"]["reduced"], true);
}

#[test]
fn branches_rejects_bad_parameters() {
    let (v, code) = json(&["branches", "--nu", "3", "--m", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "hypothesis");
    assert_eq!(run(&["branches", "--nu", "3", "--s", "1/0"]).status.code(), Some(2));
    assert_eq!(run(&["branches", "--nu", "3", "--no-q", "--q-power", "2"]).status.code(), Some(2));
}

#[test]
fn branches_numeric_cross_check() {
    let (v, code) = json(&["branches", "--nu", "3", "--s", "1/10", "--numeric"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["numeric"]["within_tolerance"], true);
}

#[test]
fn verify_case_c() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (v, code) = json(&["verify", "--nu-range", "5..5", "--s-samples", "0,1/7", "--report-dir", d]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    let fams = v["results"]["families"].as_array().unwrap();
    assert_eq!(fams.len(), 2);
    assert!(fams.iter().all(|f| f["case"]["label"] == "C" && f["status"] == "pass"));
    assert_eq!(v["inputs"]["samples_used"], serde_json::json!(["0", "1/7"]));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn verify_nu_one_runs_m_one() {
    let dir = tempfile::tempdir().unwrap();
    let (v, code) = json(&["verify", "--nu-range", "1..1", "--report-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let fams = v["results"]["families"].as_array().unwrap();
    assert_eq!(fams.len(), 1);
    assert_eq!(fams[0]["m"], 1);
    assert_eq!(fams[0]["samples"].as_array().unwrap().len(), 1);
    assert!(v["results"]["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("nu = 1")));
}

// ν = 2 with q = 0 has a cubic symmetry x -> ωx; the sweep reports it as a
// counterexample and writes the report file.
#[test]
fn verify_writes_counterexample_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (v, code) = json(&["verify", "--nu-range", "2..3", "--report-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let fams = v["results"]["families"].as_array().unwrap();
    assert_eq!(fams[0]["status"], "fail");
    let path = fams[0]["report_path"].as_str().unwrap();
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["family"]["nu"], 2);
    assert_eq!(report["runs"][0]["report"]["verdict"]["symmetry"], 3);
    assert_eq!(fams[1]["status"], "pass");
    assert!(fams[1]["report_path"].is_null());

    // the modified q removes the symmetry
    let (v, code) = json(&["verify", "--nu-range", "2..2", "--q-power", "2", "--report-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{v:#}");
}

#[test]
fn verify_bad_range() {
    assert_eq!(run(&["verify", "--nu-range", "0..3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--nu-range", "3..x"]).status.code(), Some(2));
}

#[test]
fn present_nu_one_squares() {
    let o = run(&["present", "--nu", "1", "--quotient", "squares"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("<t1,t2 | t1 t2 t1 = t2 t1 t2>"), "{out}");
    assert!(out.contains("squares quotient: order 6"), "{out}");
    let (v, _) = json(&["present", "--nu", "1", "--quotient", "squares", "--homs", "3"]);
    assert_eq!(v["results"]["quotient"]["order"], 6);
    assert_eq!(v["results"]["homs"]["count"], 12);
    assert_eq!(v["results"]["homs"]["agrees"], true);
}

#[test]
fn present_nu_two_json() {
    let (v, code) = json(&["present", "--nu", "2"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["presentation"]["generators"].as_array().unwrap().len(), 4);
    assert_eq!(r["census"]["braid"], 5);
    assert_eq!(r["census"]["commute"], 1);
    assert_eq!(r["census"]["triangle"], 2);
    assert_eq!(r["abelianization"]["infinite_cyclic"], true);
    assert_eq!(r["diagram"]["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn present_capped_is_a_status() {
    let (v, code) = json(&["present", "--nu", "2", "--quotient", "squares", "--cap", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "capped");
    assert_eq!(v["results"]["quotient"]["status"], "capped");
    assert!(v["results"]["quotient"]["order"].is_null());
}

#[test]
fn present_usage_errors() {
    assert_eq!(run(&["present", "--nu", "0"]).status.code(), Some(2));
    assert_eq!(run(&["present"]).status.code(), Some(2));
    assert_eq!(run(&["present", "--nu", "2", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "--family", "bp", "--nu", "2", "--format", "gap"]).status.code(), Some(2));
}

#[test]
fn present_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let reference = run(&["--format", "plain", "present", "--nu", "3"]);
    for format in ["json", "plain", "gap"] {
        let path = dir.path().join(format!("p3.{format}"));
        let o = run(&["--format", format, "--out", path.to_str().unwrap(), "present", "--nu", "3"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let back = run(&["--format", "plain", "present", "--from", path.to_str().unwrap()]);
        assert_eq!(back.status.code(), Some(0), "{format}");
        assert_eq!(back.stdout, reference.stdout, "{format}");
    }
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "<t1 | t2 = 1>").unwrap();
    assert_eq!(run(&["present", "--from", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cases: [&[&str]; 4] = [
        &["--format", "json", "branches", "--nu", "5", "--m", "4", "--s", "1/10"],
        &["--format", "json", "present", "--nu", "3", "--quotient", "squares"],
        &["--format", "json", "--jobs", "1", "verify", "--nu-range", "2..7", "--report-dir", d],
        &["--format", "json", "--jobs", "4", "verify", "--nu-range", "2..7", "--report-dir", d],
    ];
    let outs: Vec<Vec<u8>> = cases.iter().map(|a| run(a).stdout).collect();
    for (a, o) in cases.iter().zip(&outs) {
        assert_eq!(&run(a).stdout, o, "{a:?}");
    }
    assert_eq!(outs[2], outs[3], "thread count changed the sweep output");
}

#[test]
fn schema_rejects_malformed_reports() {
    let (mut v, _) = json(&["present", "--nu", "1"]);
    v["results"]["presentation"]["relators"][0]["kind"] = Value::from("knot");
    assert!(!schema().is_valid(&v));
    let (mut v, _) = json(&["branches", "--nu", "3"]);
    v["results"]["unfolding"]["s"] = Value::from(0.1);
    assert!(!schema().is_valid(&v));
    v.as_object_mut().unwrap().remove("tool_version");
    assert!(!schema().is_valid(&v));
}
