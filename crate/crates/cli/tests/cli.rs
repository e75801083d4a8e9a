use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn permgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn invariants_of_s4() {
    let out = permgen(&["invariants", "S4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!((v["d"].as_u64(), v["m"].as_u64()), (Some(2), Some(3)));
    assert_eq!(v["spectrum"], serde_json::json!([2, 3]));
}

#[test]
fn exit_codes() {
    assert_eq!(permgen(&["invariants", "D(S3,"]).status.code(), Some(2));
    assert_eq!(permgen(&["invariants", "Q4"]).status.code(), Some(2));
    assert_eq!(permgen(&["invariants", "WREATH(1)"]).status.code(), Some(3));
    assert_eq!(permgen(&["--max-order", "100", "build", "/nonexistent"]).status.code(), Some(1));
    assert_eq!(permgen(&["--max-order", "100", "spectrum", "S5"]).status.code(), Some(3));
}

#[test]
fn verify_subcommands() {
    let v = json(&permgen(&["verify", "soluble", "S4"]));
    assert_eq!((v["applicable"].as_bool(), v["case"].as_u64()), (Some(true), Some(2)));
    let v = json(&permgen(&["verify", "nonsoluble", "A5"]));
    assert_eq!((v["applicable"].as_bool(), v["ok"].as_bool()), (Some(true), Some(true)));
    let v = json(&permgen(&["verify", "md-equal", "CROWN(S3, 2)"]));
    assert_eq!(v["case"], 2);
    assert_eq!(v["evidence"]["copies"], 2);
}

#[test]
fn build_file_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.grp");
    fs::write(&file, "# Frobenius group of order 21\nSD(C7, C3, [g1 -> [g1^2]])\n").unwrap();
    let v = json(&permgen(&["build", file.to_str().unwrap()]));
    assert_eq!(v["order"], 21);
    let out = dir.path().join("r.json");
    let st = permgen(&["invariants", file.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert!(st.status.success());
    let r: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["id"], "SD(C7, C3, [g1 -> [g1^2]])");
    assert_eq!(r["order"], 21);
}

#[test]
fn phi_crown_h1() {
    let v = json(&permgen(&["phi", "S3", "2", "--brute"]));
    assert_eq!((v["phi"].as_str(), v["brute"].as_str()), (Some("18"), Some("18")));
    let v = json(&permgen(&["crown", "S3", "2"]));
    assert_eq!((v["order"].as_u64(), v["d"].as_u64()), (Some(18), Some(3)));
    let dir = tempfile::tempdir().unwrap();
    let module = dir.path().join("sign.json");
    fs::write(&module, r#"{"prime": 3, "dim": 1, "matrices": [[[1]], [[2]]]}"#).unwrap();
    let v = json(&permgen(&["h1", "S3", module.to_str().unwrap()]));
    assert_eq!(v["h1"], 1);
    assert_eq!(v["invariants"]["s"], 1);
}

#[test]
fn corpus_with_cache_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.grp"), "S3\n").unwrap();
    fs::write(dir.path().join("b.grp"), "D(C2, C2)\n").unwrap();
    fs::write(dir.path().join("bad.grp"), "D(S3,\n").unwrap();
    fs::write(dir.path().join("slow.grp"), "# slow\nA5\n").unwrap();
    let cache = dir.path().join("cache.jsonl");
    let csv = dir.path().join("out.csv");
    let args = [
        "--cache", cache.to_str().unwrap(), "--threads", "2",
        "corpus", dir.path().to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ];
    let first = permgen(&args);
    assert!(first.status.success());
    let second = permgen(&args);
    let strip = |v: Value| -> Vec<Value> {
        v.as_array().unwrap().iter().cloned().map(|mut r| {
            r.as_object_mut().unwrap().remove("timings");
            r
        }).collect()
    };
    let (a, b) = (strip(json(&first)), strip(json(&second)));
    assert_eq!(a, b);
    assert_eq!(a.len(), 3);
    assert_eq!(a.iter().filter(|r| r.get("error").is_some()).count(), 1);
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), 2);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 4);
    let slow = permgen(&["corpus", dir.path().to_str().unwrap(), "--slow"]);
    assert_eq!(json(&slow).as_array().unwrap().len(), 4);
}
