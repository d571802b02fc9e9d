use std::process::Command;

use bochner_lab_cli::{run, THREADS_ENV};
use serde_json::{json, Value};

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["bochner-lab"];
    full.extend_from_slice(args);
    let out = run(full);
    (out.code, serde_json::from_str(&out.stdout).expect("stdout is JSON"))
}

fn temp_spec(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("bochner-lab-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn hermite_eigenpolys_golden() {
    let (code, v) = json_of(&["eigenpolys", "--family", "hermite", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({
            "lambda": "n",
            "operator": "(-1)*D^2 + (x)*D",
            "polys": ["1", "x", "x^2 - 1", "x^3 - 3*x"],
            "schema": 1
        })
    );
}

#[test]
fn appell_recurrence_csv_has_closed_forms() {
    let out = run(["bochner-lab", "recur", "--family", "appell", "--args", "k=3,a1=1,a2=2,a3=3", "-n", "20", "--reconstruct", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("19,-1,-38,-1026"));
    assert!(out.stdout.contains("# b0(n) = -1 for n >= 0"));
    assert!(out.stdout.contains("# b1(n) = -2*n for n >= 1"));
    assert!(out.stdout.contains("# b2(n) = -3*n^2 + 3*n for n >= 2"));
}

#[test]
fn catalog_output_feeds_back_in() {
    let out = run(["bochner-lab", "catalog", "--family", "laguerre", "--args", "alpha=2"]);
    assert_eq!(out.code, 0);
    let path = temp_spec("laguerre", &out.stdout);
    let (code, v) = json_of(&["recur", "--op", &path, "-n", "30", "--reconstruct", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], 1);
    assert_eq!(v["reconstructed"]["b0"], "2*n + 3");
    assert_eq!(v["reconstructed"]["b1"], "n^2 + 2*n");
}

#[test]
fn symbolic_b_for_a_parametric_spec() {
    let path = temp_spec("sym", r#"{"vars":["a1","a2","a3"],"coeffs":{"1":"a1 - x","2":"a2","3":"a3"}}"#);
    let (code, v) = json_of(&["symbolic-b", "--op", &path, "--jmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["b"], json!(["a1", "n*a2", "n^2*a3 - n*a3", "0"]));
}

#[test]
fn adcheck_certificate_for_appell() {
    let (code, v) = json_of(&["adcheck", "--family", "appell", "--args", "k=3,a1=1,a2=2,a3=3"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["coefficients"], json!(["0", "0", "0", "18"]));
    assert_eq!(v["certificate"]["matches"], true);
}

#[test]
fn darboux_on_laguerre() {
    let (code, v) = json_of(&["darboux", "--family", "laguerre", "--args", "alpha=1", "--c", "0", "-n", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["lambda_hat"]["-1"], "n^2 - 1");
    assert_eq!(v["lambda_hat"]["0"], "2*n + 1");
}

#[test]
fn exit_codes() {
    // usage problems
    assert_eq!(run(["bochner-lab", "eigenpolys", "--family", "nope", "-n", "3"]).code, 2);
    assert_eq!(run(["bochner-lab", "recur", "--family", "hermite", "-n", "1"]).code, 2);
    assert_eq!(run(["bochner-lab", "eigenpolys"]).code, 2);
    let (code, v) = json_of(&["recur", "--family", "appell", "--args", "a1=1", "-n", "8"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "Usage");
    // mathematical verdicts
    let d2 = temp_spec("d2", r#"{"coeffs":{"2":"1"}}"#);
    let (code, v) = json_of(&["eigenpolys", "--op", &d2, "-n", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "Resonance");
    assert_eq!(v["error"]["payload"], json!({"m": 0, "n": 1}));
    let (code, v) = json_of(&["recur", "--family", "appell", "--args", "k=3,a1=1,a2=2,a3=3", "-n", "8", "--reconstruct"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NoFit");
}

#[test]
fn output_is_deterministic() {
    let args = ["bochner-lab", "recur", "--family", "jacobi", "--args", "alpha=1,beta=2", "-n", "25", "--reconstruct", "--format", "json"];
    assert_eq!(run(args).stdout, run(args).stdout);
}

#[test]
fn verify_paper_appendix_passes_and_threads_do_not_change_output() {
    let exe = env!("CARGO_BIN_EXE_bochner-lab");
    let outs: Vec<_> = ["1", "4"]
        .iter()
        .map(|t| Command::new(exe).args(["verify-paper", "--case", "appendix"]).env(THREADS_ENV, t).output().unwrap())
        .collect();
    for o in &outs {
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(outs[0].stdout, outs[1].stdout);
    let v: Value = serde_json::from_slice(&outs[0].stdout).unwrap();
    assert_eq!(v["pass"], true);
}
