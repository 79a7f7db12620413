use std::process::{Command, Output};

use derilab::diagrams::ReductionCertificate;
use serde_json::Value;

fn derilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derilab")).args(args).env_remove("DERILAB_CACHE").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = derilab(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "derilab/1");
    assert_eq!(v["oracles"]["failures"], 0);
    v
}

#[test]
fn h1_examples() {
    let v = json(&["h1", "--algebra", "assoc", "--n", "2", "--k", "2", "--mode", "plus", "--ring", "z"]);
    assert_eq!(v["results"][0]["free_rank"], 4);
    assert_eq!(v["results"][0]["torsion"], Value::Array(vec![]));
    let v = json(&["h1", "--algebra", "lie", "--n", "4", "--k", "2", "--mode", "plus", "--ring", "z"]);
    assert_eq!(v["results"][0]["free_rank"], 10);
    let v = json(&["h1", "--algebra", "symp", "--g", "2", "--k", "2", "--ring", "q", "--partitions", "1:1"]);
    assert_eq!(v["results"][0]["q_dimension"], 5);
}

#[test]
fn h1_symp_genus_six_vanishes() {
    let v = json(&["h1", "--algebra", "symp", "--g", "6", "--k", "3", "--mode", "plus", "--ring", "modp"]);
    let r = &v["results"][0];
    assert_eq!(r["fp_dimension"], 0);
    assert_eq!(r["span_rank"], 49776);
    assert_eq!(v["oracles"]["checks"], 4);
}

#[test]
fn exit_codes() {
    // range guard
    let o = derilab(&["h1", "--algebra", "assoc", "--n", "12", "--k", "6"]);
    assert_eq!(o.status.code(), Some(2));
    // size gate without --heavy
    let o = derilab(&["h1", "--algebra", "lie", "--n", "9", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--heavy"));
    // usage errors
    assert_eq!(derilab(&["h1", "--algebra", "assoc", "--g", "2", "--k", "2"]).status.code(), Some(2));
    assert_eq!(derilab(&["h1", "--algebra", "nope", "--n", "2", "--k", "2"]).status.code(), Some(2));
    assert_eq!(derilab(&["h1", "--algebra", "assoc", "--n", "2", "--k", "2", "--partitions", "0:2"]).status.code(), Some(2));
    assert_eq!(derilab(&["verify", "--suite", "identities"]).status.code(), Some(2));
    assert_eq!(derilab(&["verify", "--suite", "bogus", "--seed", "1"]).status.code(), Some(2));
    // genus too small quotes the bound
    let o = derilab(&["reduce-spider", "--g", "4", "--spider", "1,4,-2,-1,3,-1,2,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k+3 = 9"));
}

#[test]
fn verify_examples() {
    for args in [
        vec!["verify", "--suite", "identities", "--seed", "7"],
        vec!["verify", "--suite", "slides", "--seed", "7", "--g", "6"],
        vec!["verify", "--suite", "mirror", "--seed", "7"],
        vec!["verify", "--suite", "all", "--seed", "3"],
    ] {
        let v = json(&args);
        assert!(v["results"].as_array().unwrap().iter().all(|r| r["passed"] == true));
    }
}

#[test]
fn reduce_spider_certificates_reaudit() {
    let dir = tempfile::tempdir().unwrap();
    for (text, brackets) in [("1,4,-2,-1,3,-1,2,1", None), ("1,2,-1,3,-2,-3,4", Some(0)), ("1,2,3,4,5", Some(1))] {
        let out = dir.path().join("cert.json");
        let o = derilab(&["reduce-spider", "--g", "8", "--spider", text, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let r = &v["results"][0];
        assert_eq!(r["audit"], "pass");
        let cert: ReductionCertificate = serde_json::from_value(r["certificate"].clone()).unwrap();
        cert.audit().unwrap();
        if let Some(b) = brackets {
            assert_eq!(cert.brackets.len(), b, "{text}");
        }
    }
    // the example in the smallest genus
    let v = json(&["reduce-spider", "--g", "6", "--spider", "1,4,-2,-1,3,-1,2,1"]);
    assert_eq!(v["results"][0]["guaranteed_range"], false);
}

#[test]
fn dims_examples() {
    let v = json(&["dims", "--algebra", "symp", "--g", "2", "--k", "1"]);
    let r = &v["results"][1];
    assert_eq!(r["dim"], 24);
    assert_eq!(r["components"][0]["dim"], 20);
    assert_eq!(r["components"][1]["dim"], 4);
    assert_eq!(json(&["dims", "--algebra", "assoc", "--n", "3", "--k", "2"])["results"][2]["dim"], 81);
    assert_eq!(json(&["dims", "--algebra", "lie", "--n", "4", "--k", "2"])["results"][2]["dim"], 80);
}

#[test]
fn generation_profile_and_csv() {
    let v = json(&["generation-profile", "--algebra", "lie", "--n", "3", "--k", "3"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["k1_spans_image"] == true));
    let o = derilab(&["dims", "--algebra", "assoc", "--n", "2", "--k", "1", "--format", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().unwrap().clone();
    let dim = header.iter().position(|h| h == "dim").unwrap();
    let dims: Vec<String> = rd.records().map(|r| r.unwrap()[dim].to_string()).collect();
    assert_eq!(dims, ["4", "8"]);
}

#[test]
fn deterministic_results_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["h1", "--algebra", "assoc", "--n", "3", "--k", "2", "--ring", "z", "--cache-dir", cache];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["config"]["cache_hit"], false);
    assert_eq!(b["config"]["cache_hit"], true);
    let c = json(&["h1", "--algebra", "assoc", "--n", "3", "--k", "2", "--ring", "z", "--workers", "2"]);
    assert_eq!(a["results"], c["results"]);
    let s1 = json(&["verify", "--suite", "spiders", "--seed", "11"]);
    let s2 = json(&["verify", "--suite", "spiders", "--seed", "11"]);
    assert_eq!(s1["results"], s2["results"]);
}
