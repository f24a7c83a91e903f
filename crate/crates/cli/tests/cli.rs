use std::process::{Command, Output};

use serde_json::Value;

const SMALL: &[&str] = &["--samples", "16384"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resmahler"))
        .args(args)
        .env_remove("RESMAHLER_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["mm", ""]).status.code(), Some(2));
    assert_eq!(run(&["mm", "1 + x +"]).status.code(), Some(2));
    assert_eq!(run(&["mm", "x - x"]).status.code(), Some(3));
    assert_eq!(run(&["mm", "1 + x + y", "--samples", "100"]).status.code(), Some(2));
    assert_eq!(run(&["theorem", "dim2", "--eta", "0"]).status.code(), Some(2));
    assert_eq!(run(&["theorem", "trinomial", "--p", "2", "--q", "4"]).status.code(), Some(2));
    assert_eq!(run(&["polytope", "0,0|0,0;1,0|0,0;0,1"]).status.code(), Some(3));
    assert_eq!(run(&["polytope", "0,0;a"]).status.code(), Some(2));
    assert_eq!(run(&["identities", "--samples", "50", "--tolerance", "1e-30"]).status.code(), Some(4));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn invalid_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_resmahler"))
        .args(["constants"])
        .env("RESMAHLER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn univariate_input_uses_jensen() {
    let (code, v) = json(&["mm", "t^5 - 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["method"], "jensen");
    assert_eq!(v["result"]["value"].as_f64(), Some(0.0));
    let (_, v) = json(&["mm", "2*z^3 - 6"]);
    assert!((v["result"]["value"].as_f64().unwrap() - 6f64.ln()).abs() < 1e-12);
}

#[test]
fn result_shape_and_determinism() {
    let args = ["mm", "1 + x + y", "--samples", "16384", "--seed", "3"];
    let (code, a) = json(&args);
    assert_eq!(code, 0);
    for key in ["command", "inputs", "result", "cross_check", "elapsed_ms"] {
        assert!(a.get(key).is_some(), "missing {key}");
    }
    assert_eq!(a["command"], "mm");
    assert_eq!(a["inputs"]["seed"], 3);
    assert_eq!(a["result"]["samples"], 16384);
    let (_, b) = json(&args);
    assert_eq!(without_timing(a), without_timing(b));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["--json", "mm", "1 + x + y*z", "--samples", "16384"];
    let one = Command::new(env!("CARGO_BIN_EXE_resmahler"))
        .args(args)
        .env("RESMAHLER_THREADS", "1")
        .output()
        .unwrap();
    let three = Command::new(env!("CARGO_BIN_EXE_resmahler"))
        .args(args)
        .env("RESMAHLER_THREADS", "3")
        .output()
        .unwrap();
    let parse = |o: &Output| without_timing(serde_json::from_slice(&o.stdout).unwrap());
    assert_eq!(parse(&one), parse(&three));
}

#[test]
fn theorem_payloads() {
    let mut args = vec!["theorem", "dim2", "--eta", "2", "--verify"];
    args.extend_from_slice(SMALL);
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["theorem"], "dim2");
    assert_eq!(v["result"]["closed_form_terms"][0]["coeff"], "2");
    assert!((v["result"]["numeric"].as_f64().unwrap() - 0.646_131_894_438_901).abs() < 1e-12);
    assert_eq!(v["cross_check"]["pass"], true);

    let (code, v) = json(&["theorem", "dim4"]);
    assert_eq!(code, 0);
    assert!(v["cross_check"].is_null());
    assert!((v["result"]["numeric"].as_f64().unwrap() - 0.548_072_227_051_078_9).abs() < 1e-13);

    let (code, v) = json(&["theorem", "trinomial", "--p", "1", "--q", "2"]);
    assert_eq!(code, 0);
    assert!((v["result"]["roots"]["phi_large"].as_f64().unwrap() - 1.618_033_988_749_895).abs() < 1e-14);
}

#[test]
fn dim3_family_inline() {
    let mut args = vec!["theorem", "dim3", "--family", "0,0;1,0;3,0|0,0;1,1;3,0|0,0;0,2", "--verify"];
    args.extend_from_slice(SMALL);
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["p"].as_u64(), v["result"]["q"].as_u64()), (Some(1), Some(3)));
    assert_eq!(v["result"]["reduction"]["multiplier"], 2);
    assert_eq!(v["cross_check"]["pass"], true);
}

#[test]
fn polytope_classes() {
    let (code, v) = json(&["polytope", "0,0;1,0;0,1|0,0;1,0;0,1|0,0;1,0;0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 4);
    assert_eq!(v["result"]["class"], "DimFourDet");
    assert!(v["result"].get("eta").is_none());

    let (_, v) = json(&["polytope", "0,0;1,0;0,1|0,0;2,0|0,0;0,3"]);
    assert_eq!(v["result"]["class"], "DimTwo");
    assert_eq!(v["result"]["etas"], serde_json::json!([2, 3]));
    assert_eq!(v["result"]["multiplier"], 6);
}

#[test]
fn polytope_reads_files() {
    let path = std::env::temp_dir().join(format!("resmahler-family-{}.txt", std::process::id()));
    std::fs::write(&path, "0,0;1,0;2,0\n0,0;1,1;2,0\n0,0;0,1\n").unwrap();
    let (code, v) = json(&["polytope", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["result"]["class"], "DimThreeB");
    assert_eq!(v["result"]["dim"], 3);
}

#[test]
fn identities_report_every_relation() {
    let (code, v) = json(&["identities", "--samples", "100"]);
    assert_eq!(code, 0);
    let records = v["result"].as_array().unwrap();
    assert!(records.len() >= 10);
    assert!(records.iter().all(|r| r["pass"] == true));
}

#[test]
fn human_output_is_readable() {
    let out = run(&["constants"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("constants\n"));
    assert!(text.contains("zeta3: 1.202056903159594"));
}

#[test]
fn all_binomial_family_is_dimension_one() {
    let (code, v) = json(&["polytope", "0;1|0;2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["class"], "DimOne");
}

#[test]
fn default_verification_passes() {
    let (code, v) = json(&["theorem", "trinomial", "--p", "1", "--q", "2", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["cross_check"]["pass"], true);
    let (code, v) = json(&["theorem", "dim4", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["cross_check"]["pass"], true);
    assert_eq!(v["cross_check"]["samples"], 1 << 20);
}
