use std::fs;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ap-forge")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stdout)
}

#[test]
fn validate_reports_the_erratum() {
    let (code, v, _) = run(&["validate", "bundled:s.ap", "bundled:s_corrected.ap"]);
    assert_eq!(code, 2);
    let res = v["results"].as_array().unwrap();
    assert_eq!(res[0]["valid"], false);
    assert_eq!(res[0]["first_divergence"], 3);
    assert_eq!(res[0]["rhs"], "x1 x2 x3 x4");
    assert_eq!(res[1]["valid"], true);
}

#[test]
fn product_matches_bundled_r() {
    let (code, v, _) = run(&["mul", "bundled:t.ap", "bundled:s_corrected.ap", "--order", "both"]);
    assert_eq!(code, 0);
    let p = v["results"]["products"].as_array().unwrap();
    assert_eq!(p[0]["order"], "forward");
    assert_eq!(p[0]["matches_bundled"], serde_json::json!(["r.ap"]));
    assert_eq!(p[1]["matches_bundled"], serde_json::json!([]));
}

#[test]
fn verbatim_s_is_rejected_as_input() {
    let (code, v, _) = run(&["mul", "bundled:t.ap", "bundled:s.ap"]);
    assert_eq!(code, 2);
    assert!(v["results"]["error"].as_str().unwrap().contains("Artin equation fails"));
}

#[test]
fn identity_form_is_zero_and_torelli() {
    let (code, v, _) = run(&["abelian", "bundled:identity4.ap"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["torelli"], true);
    assert_eq!(r["matrix"], serde_json::json!([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]));
    assert_eq!(r["h1"], "Z^4");
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["torelli", "--n", "3", "--seed", "5"]).2;
    let b = run(&["torelli", "--n", "3", "--seed", "5"]).2;
    let c = run(&["torelli", "--n", "3", "--seed", "6"]).2;
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(!a.contains("timings_ms"));
    assert!(run(&["--timings", "torelli"]).2.contains("timings_ms"));
}

#[test]
fn files_on_disk_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let ap = dir.path().join("sigma.ap");
    fs::write(&ap, "# ap-forge presentation v1\nn=2\nx2^-1 x1^-1\nx1^-1\n").unwrap();
    let braid = dir.path().join("a12.braid");
    fs::write(&braid, "# ap-forge braid v1\nn=2\ns1^2\nframings=1,-1\n").unwrap();
    let out = dir.path().join("report.json");
    let (code, v, text) = run(&["validate", ap.to_str().unwrap(), braid.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(v["results"][0]["valid"], true);
    assert_eq!(v["results"][1]["valid"], true);
    assert_eq!(fs::read_to_string(&out).unwrap(), text);
    let (code, v, _) = run(&["inv", ap.to_str().unwrap()]);
    assert_eq!(code, 0);
    let inv = dir.path().join("inv.ap");
    fs::write(&inv, v["results"]["presentation"].as_str().unwrap()).unwrap();
    let (code, v, _) = run(&["mul", ap.to_str().unwrap(), inv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["products"][0]["relators"], serde_json::json!(["1", "1"]));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ap");
    fs::write(&bad, "n=2\nx1 x3\n1\n").unwrap();
    let (code, v, _) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["results"]["error"].as_str().unwrap().contains("line 2"));
    assert_eq!(run(&["validate", "/nonexistent.ap"]).0, 2);
    assert_eq!(run(&["homs", "bundled:trefoil.fp", "--target", "q8x"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn overflow_exits_3() {
    let (code, v, _) = run(&["enumerate", "bundled:identity4.ap", "--max-cosets", "50"]);
    assert_eq!(code, 3);
    assert_eq!(v["results"][0]["outcome"], "unknown");
    let (code, _, _) = run(&["homs", "bundled:identity4.ap", "--target", "sl25", "--budget", "10"]);
    assert_eq!(code, 3);
}

#[test]
fn group_commands() {
    let (code, v, _) = run(&["enumerate", "bundled:s_corrected.ap"]);
    assert_eq!((code, v["results"][0]["order"].as_u64()), (0, Some(1)));
    let (_, v, _) = run(&["homs", "bundled:trefoil.fp", "--target", "s3"]);
    assert_eq!(v["results"]["counts"]["total"], 12);
    let (code, v, _) = run(&["triality", "bundled:r.ap", "bundled:s_corrected.ap"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["outcome"], "trivial");
}

#[test]
fn knot_commands() {
    let (_, v, _) = run(&["alexander", "bundled:r.ap", "--knot", "3"]);
    assert_eq!(v["results"][0]["polynomial"], "t^2-3t+1");
    let (_, v, _) = run(&["alexander", "bundled:trefoil.fp"]);
    assert_eq!(v["results"][0]["polynomial"], "t^2-t+1");
    let (code, v, _) = run(&["knot-group", "bundled:s_corrected.ap", "--knot", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["meridian"], "x3");
    assert_eq!(v["results"]["relators"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["knot-group", "bundled:r.ap", "--knot", "0"]).0, 2);
}

#[test]
fn form_commands() {
    let (_, v, _) = run(&["form", "--e8"]);
    assert_eq!(v["results"]["report"]["diagonalizable_to_identity"], "no");
    assert_eq!(v["results"]["report"]["parity"], "Even");
    let (_, v, _) = run(&["form", "--matrix", "1,0;0,-1", "--realize"]);
    assert_eq!(v["results"]["report"]["definiteness"], "Indefinite");
    assert!(v["results"]["realization"].as_str().unwrap().starts_with("# ap-forge presentation v1"));
    let (code, v, _) = run(&["donaldson", "--e8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["obstruction"], "obstructed");
    assert_eq!(v["results"]["witness"]["outcome"], "nontriviality_certified");
    let (_, v, _) = run(&["donaldson", "--matrix", "1,0;0,1"]);
    assert_eq!(v["results"]["witness"]["outcome"], "not_obstructed");
}

#[test]
fn thread_cap_is_read() {
    let out = Command::new(env!("CARGO_BIN_EXE_ap-forge"))
        .args(["abelian", "bundled:r.ap"])
        .env("AP_FORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_ap-forge"))
        .args(["abelian", "bundled:r.ap"])
        .env("AP_FORGE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let (code, v, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["criteria"].as_array().unwrap().len(), 9);
}
