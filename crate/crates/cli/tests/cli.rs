use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run_with(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fishburn-lab"))
        .args(args)
        .env("FISHBURN_LAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Env {
    dir: tempfile::TempDir,
}

impl Env {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    fn cache(&self) -> std::path::PathBuf {
        self.dir.path().join("cache.json")
    }

    fn run(&self, args: &[&str]) -> Output {
        run_with(&self.cache(), args)
    }
}

#[test]
fn count_fishburn_table_value() {
    let env = Env::new();
    let out = env.run(&["count", "--base", "fishburn", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["count"], "5335");
    assert_eq!(r["spec"], "F()");
    assert!(r["elapsed_ms"].is_number());
}

#[test]
fn count_range_and_csv() {
    let env = Env::new();
    let out = env.run(&["count", "--base", "all", "--avoid", "231", "--n-range", "0..6", "--format", "csv", "--no-cache"]);
    assert_eq!(stdout(&out), "n,count\n0,1\n1,1\n2,2\n3,5\n4,14\n5,42\n6,132\n");
    let out = env.run(&["count", "--avoid", "2413,2431", "--indecomposable", "--n-range", "1..=6", "--no-timing"]);
    let counts: Vec<_> = records(&out).iter().map(|r| r["count"].as_str().unwrap().to_string()).collect();
    assert_eq!(counts, ["1", "1", "2", "6", "21", "79"]);
}

#[test]
fn second_call_hits_cache_with_same_value() {
    let env = Env::new();
    let args = ["count", "--avoid", "321,4123", "--n-range", "5..9", "--no-timing"];
    let first = records(&env.run(&args));
    let second = records(&env.run(&args));
    assert!(env.cache().exists());
    for (a, b) in first.iter().zip(&second) {
        assert_eq!(a["cache"], "miss");
        assert_eq!(b["cache"], "hit");
        assert_eq!(a["count"], b["count"]);
    }
    let fresh = records(&env.run(&["count", "--avoid", "321,4123", "--n-range", "5..9", "--no-cache", "--no-timing"]));
    for (a, b) in fresh.iter().zip(&second) {
        assert_eq!(a["cache"], "off");
        assert_eq!(a["count"], b["count"]);
    }
}

#[test]
fn explicit_cache_flag_beats_environment() {
    let env = Env::new();
    let other = env.dir.path().join("sub").join("other.json");
    let out = env.run(&["count", "--n", "5", "--cache", other.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(other.exists());
    assert!(!env.cache().exists());
}

#[test]
fn stale_version_is_ignored() {
    let env = Env::new();
    std::fs::write(env.cache(), r#"{"version":"0.0.0/0","entries":{"count|F()":{"8":"1"}}}"#).unwrap();
    let r = &records(&env.run(&["count", "--n", "8", "--no-timing"]))[0];
    assert_eq!(r["count"], "5335");
    assert_eq!(r["cache"], "miss");
}

#[test]
fn corrupt_cache_warns_and_rebuilds() {
    let env = Env::new();
    std::fs::write(env.cache(), "{ this is not json").unwrap();
    let out = env.run(&["count", "--n", "6", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"));
    assert_eq!(records(&out)[0]["count"], "217");
    let again = records(&env.run(&["count", "--n", "6", "--no-timing"]));
    assert_eq!(again[0]["cache"], "hit");
}

#[test]
fn output_is_reproducible_without_timing() {
    let env = Env::new();
    let args = ["poly", "--avoid", "123", "--n-range", "1..5", "--stats", "inv,ltrmax,afterone", "--no-timing", "--no-cache"];
    let a = env.run(&args);
    let b = env.run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed_ms"));
}

#[test]
fn polynomial_terms_sorted() {
    let env = Env::new();
    let out = env.run(&["poly", "--avoid", "123", "--n", "4", "--stats", "inv,ltrmax", "--no-timing"]);
    let terms = records(&out)[0]["poly"].as_array().unwrap().clone();
    let keys: Vec<(u64, u64, u64)> = terms
        .iter()
        .map(|t| (t["q"].as_u64().unwrap(), t["t"].as_u64().unwrap(), t["r"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let total: u64 = terms.iter().map(|t| t["coeff"].as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 8);
}

#[test]
fn label_split_matches_table_entry() {
    let env = Env::new();
    let out = env.run(&["poly", "--n", "4", "--label-split", "--tree", "2143", "--no-timing"]);
    let r = &records(&out)[0];
    assert_eq!(r["spec"], "F(321,2143)");
    let one_a = r["labels"].as_array().unwrap().iter().find(|l| l["label"] == "(1a)").unwrap();
    let terms: Vec<String> = one_a["poly"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| format!("{}q^{}t^{}", t["coeff"].as_str().unwrap(), t["q"], t["t"]))
        .collect();
    assert_eq!(terms, ["2q^1t^3", "1q^2t^2"]);
    let out = env.run(&["poly", "--avoid", "123", "--n", "4", "--label-split", "--tree", "1423"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn map_and_sites() {
    let env = Env::new();
    let seq = |p: &str| records(&env.run(&["gmap", "--perm", p, "--no-timing"]))[0]["seq"].clone();
    assert_eq!(seq("4175326"), "0110131");
    assert_eq!(seq("4157326"), "0110132");
    assert_eq!(seq("3142"), "0101");
    let back = records(&env.run(&["gmap", "--inverse", "--seq", "0110132"]));
    assert_eq!(back[0]["perm"], "4157326");
    let sites = records(&env.run(&["activesites", "--perm", "415326"]));
    assert_eq!(sites[0]["sites"], serde_json::json!([0, 2, 3, 5, 6]));
    let bad = env.run(&["gmap", "--inverse", "--seq", "001031201"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("index 4"));
}

#[test]
fn labels() {
    let env = Env::new();
    let label = |tree: &str, p: &str| records(&env.run(&["label", "--tree", tree, "--perm", p]))[0].clone();
    assert_eq!(label("1423", "1")["label"], "(2a)");
    assert_eq!(label("1423", "1")["identified"], "(2x)");
    assert_eq!(label("3124", "12")["label"], "(3)");
    assert!(label("3124", "12").get("identified").is_none());
    assert_eq!(env.run(&["label", "--tree", "1423", "--perm", "321"]).status.code(), Some(2));
    assert_eq!(env.run(&["label", "--tree", "9999", "--perm", "1"]).status.code(), Some(1));
}

#[test]
fn sequences() {
    let env = Env::new();
    let count = |args: &[&str]| records(&env.run(args))[0]["count"].clone();
    assert_eq!(count(&["seqcount", "--kind", "ascent", "--avoid", "101", "--n", "6"]), "132");
    assert_eq!(count(&["seqcount", "--kind", "ascent", "--n", "8"]), "5335");
    assert_eq!(count(&["seqcount", "--kind", "binary", "--avoid", "000", "--n", "4"]), "11");
    assert_eq!(env.run(&["seqcount", "--kind", "binary", "--avoid", "012", "--n", "4"]).status.code(), Some(1));
}

#[test]
fn series_expansion() {
    let env = Env::new();
    let out = env.run(&["series", "--gf", "T_1423", "--order", "6", "--at", "q=1,t=1", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,q,t,r,coeff\n0,0,0,0,1\n1,0,0,0,1\n2,0,0,0,2\n3,0,0,0,4\n4,0,0,0,8\n5,0,0,0,15\n6,0,0,0,27\n");
    let out = env.run(&["series", "--gf", "3124_k", "--k", "3", "--order", "4", "--no-timing"]);
    let recs = records(&out);
    assert_eq!(recs.len(), 5);
    assert_eq!(recs[0]["k"], 3);
    assert_eq!(env.run(&["series", "--gf", "nope", "--order", "3"]).status.code(), Some(1));
    assert_eq!(env.run(&["series", "--gf", "T_1423", "--at", "z=1"]).status.code(), Some(1));
    let listed = records(&env.run(&["series", "--list"]));
    assert!(listed.iter().any(|r| r["gf"] == "F321_4123"));
}

#[test]
fn verify_exit_codes() {
    let env = Env::new();
    let ok = env.run(&["verify", "--check", "T_1423", "--n-max", "9"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(records(&ok)[0]["status"], "all-equal");
    let bad = env.run(&["verify", "--check", "C_2413_SHIFT", "--n-max", "6"]);
    assert_eq!(bad.status.code(), Some(3));
    let r = &records(&bad)[0];
    assert_eq!(r["status"], "mismatch");
    assert_eq!(r["first_mismatch"]["n"], 2);
    assert_eq!(env.run(&["verify", "--check", "T_UNKNOWN"]).status.code(), Some(1));
    assert_eq!(env.run(&["verify"]).status.code(), Some(1));
    let listed = records(&env.run(&["verify", "--list"]));
    assert!(listed.len() >= 35);
}

#[test]
fn verify_all_reports_every_check() {
    let env = Env::new();
    let out = env.run(&["verify", "--all", "--n-max", "5", "--threads", "2", "--no-timing"]);
    let recs = records(&out);
    assert_eq!(recs.len(), records(&env.run(&["verify", "--list"])).len());
    let failing: Vec<&str> = recs.iter().filter(|r| r["status"] == "mismatch").map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(out.status.code(), Some(if failing.is_empty() { 0 } else { 3 }));
    assert!(failing.contains(&"C_2413_SHIFT"));
}

#[test]
fn usage_errors_name_the_token() {
    let env = Env::new();
    let f = env.run(&["count", "--avoid", "321,f", "--n", "3"]);
    assert_eq!(f.status.code(), Some(1));
    assert!(stderr(&f).contains("`f`"));
    let bad = env.run(&["count", "--avoid", "321,1x3", "--n", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("`1x3`"));
    assert_eq!(env.run(&["count", "--n-range", "5..2"]).status.code(), Some(1));
    assert_eq!(env.run(&["count"]).status.code(), Some(1));
    assert_eq!(env.run(&["count", "--n", "3", "--unknown"]).status.code(), Some(1));
    assert_eq!(env.run(&["gmap", "--perm", "21", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(env.run(&["poly", "--n", "3", "--stats", "inv,height"]).status.code(), Some(1));
    assert_eq!(env.run(&["--help"]).status.code(), Some(0));
}

#[test]
fn computation_errors() {
    let env = Env::new();
    assert_eq!(env.run(&["gmap", "--perm", "35142"]).status.code(), Some(2));
    assert_eq!(env.run(&["poly", "--n", "0", "--stats", "afterone"]).status.code(), Some(2));
}

#[test]
fn offline_lookups() {
    let env = Env::new();
    let matches = |args: &[&str]| records(&env.run(args))[0]["matches"].clone();
    let m = matches(&["oeis", "--terms", "1,1,2,5,15,53,217,1014,5335", "--offline"]);
    assert!(m.as_array().unwrap().contains(&"A022493".into()));

    let prefix = records(&env.run(&["count", "--avoid", "321,4123", "--n-range", "3..10", "--no-cache"]));
    let terms: Vec<String> = prefix.iter().map(|r| r["count"].as_str().unwrap().to_string()).collect();
    let m = matches(&["oeis", "--terms", &terms.join(","), "--offline"]);
    assert!(m.as_array().unwrap().contains(&"A262735".into()));

    let fixture = env.dir.path().join("fixture.json");
    std::fs::write(&fixture, r#"{"sequences": [{"id": "A000045", "data": [0, 1, 1, 2, 3, 5, 8, 13]}]}"#).unwrap();
    let custom = ["oeis", "--terms", "2,3,5,8", "--offline", fixture.to_str().unwrap()];
    assert_eq!(matches(&custom), serde_json::json!(["A000045"]));
    assert_eq!(matches(&["oeis", "--terms", "4,4,4,4,4,4", "--offline"]), serde_json::json!([]));
    assert_eq!(env.run(&["oeis", "--terms", "", "--offline"]).status.code(), Some(1));
    assert_eq!(env.run(&["oeis", "--terms", "1,2", "--offline", "/nonexistent/fixture.json"]).status.code(), Some(1));
}
