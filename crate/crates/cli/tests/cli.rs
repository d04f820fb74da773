use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    record: Option<Value>,
    stderr: String,
}

fn treefrac(args: &[&str], cwd: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_treefrac"))
        .args(args)
        .current_dir(cwd)
        .env_remove("TREEFRAC_CONFIG")
        .env_remove("TREEFRAC_CACHE_DIR")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        record: serde_json::from_slice(&out.stdout).ok(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn ok(args: &[&str], cwd: &Path) -> Value {
    let r = treefrac(args, cwd);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.record.expect("a run record")
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn fraction_round_trip() {
    let dir = tmp();
    let r = ok(&["cf", "4/11"], dir.path());
    assert_eq!(r["outputs"]["bs"], serde_json::json!([2, 2]));
    assert_eq!(r["outputs"]["expansion"], "[0;2,1,3]");
    assert_eq!(r["outputs"]["bottom_row"], serde_json::json!(["4", "11"]));
    assert_eq!(r["command"], "treefrac cf 4/11");

    let e = ok(&["cf", "--eval", "[0;2,1,2,1]"], dir.path());
    assert_eq!(e["outputs"]["value"], "4/11");

    let n = ok(&["cf", "2/5"], dir.path());
    assert_eq!(n["outputs"]["representation"], "not_representable");
    assert_eq!(n["outputs"]["bottom_row"], serde_json::json!(["2", "5"]));
    // 1/3 = [0;2,1] is alternating with a single digit
    assert_eq!(ok(&["cf", "1/3"], dir.path())["outputs"]["bs"], serde_json::json!([2]));
}

#[test]
fn graph_reports() {
    let dir = tmp();
    let t = ok(&["graph", "--bs", "2,2", "--trim"], dir.path());
    assert_eq!(t["outputs"]["report"]["tau"], "4");
    assert_eq!(t["outputs"]["report"]["vertex_count"], 4);

    let dot = dir.path().join("g.dot");
    let edges = dir.path().join("g.txt");
    let g = ok(
        &["graph", "--bs", "4,2,1,3", "--dot", dot.to_str().unwrap(), "--edge-list", edges.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(g["outputs"]["report"]["vertex_count"], 12);
    assert_eq!(g["outputs"]["consistent"], true);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));

    // the edge list keeps its marked edge, so tau reports the same pair
    let tau = ok(&["tau", edges.to_str().unwrap()], dir.path());
    let report = &g["outputs"]["report"];
    assert_eq!(tau["outputs"]["marked"]["del"], report["tau_del"]);
    assert_eq!(tau["outputs"]["marked"]["con"], report["tau_con"]);

    let bad = treefrac(&["graph", "--bs", "1", "--trim"], dir.path());
    assert_ne!(bad.code, 0);
    assert!(bad.stderr.contains("m = 1"), "{}", bad.stderr);
}

#[test]
fn exit_codes() {
    let dir = tmp();
    assert_eq!(treefrac(&["cf", "4/x"], dir.path()).code, 4);
    assert_eq!(treefrac(&["census", "--bogus"], dir.path()).code, 4);
    assert_eq!(treefrac(&["--help"], dir.path()).code, 0);
    assert_eq!(treefrac(&["census", "--n", "9"], dir.path()).code, 3);
    assert_eq!(treefrac(&["orbit", "ball", "--A", "2", "--N", "1000000000000"], dir.path()).code, 3);

    let failed = treefrac(&["dim", "lower", "--A", "3", "--s", "0.5", "--cells", "10000"], dir.path());
    assert_eq!(failed.code, 2);
    assert_eq!(failed.record.unwrap()["outputs"]["status"], "failed");

    std::fs::write(dir.path().join("treefrac.toml"), "census_max_n = 4\n").unwrap();
    assert_eq!(treefrac(&["census", "--n", "5"], dir.path()).code, 3);
    std::fs::write(dir.path().join("treefrac.toml"), "not toml [").unwrap();
    assert_eq!(treefrac(&["census", "--n", "4"], dir.path()).code, 4);
}

#[test]
fn census_and_orbit_examples() {
    let dir = tmp();
    let c = ok(&["census", "--n", "5", "--no-cache"], dir.path());
    assert_eq!(c["outputs"]["values"].as_array().unwrap().len(), 15);
    assert!(c.get("cache").is_none());

    let a = ok(&["orbit", "admissible", "--A", "2", "--qmax", "12"], dir.path());
    assert_eq!(a["outputs"]["all_full"], true);

    let b = ok(&["orbit", "ball", "--A", "2", "--N", "100"], dir.path());
    let r = ok(&["orbit", "repnum", "--A", "2", "--N", "100"], dir.path());
    assert_eq!(b["outputs"]["size"], r["outputs"]["total"]);

    let csv = dir.path().join("alpha.csv");
    let t = ok(&["alpha", "--max", "12", "--csv", csv.to_str().unwrap()], dir.path());
    let rows = t["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["t"], "3");
    assert_eq!(rows[0]["alpha"], 3);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 11);
}

#[test]
fn dimension_examples() {
    let dir = tmp();
    let l = ok(&["dim", "lower", "--A", "110", "--s", "0.775"], dir.path());
    assert!(l["outputs"]["certificate"]["margin"].as_f64().unwrap() > 7e-5);
    assert_eq!(l["inputs"]["cells"], 100_000);

    let csv = dir.path().join("circles.csv");
    let c = ok(&["dim", "circles", "--depth", "4", "--csv", csv.to_str().unwrap()], dir.path());
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count() - 1;
    assert_eq!(c["outputs"]["count"], rows);

    let p = ok(&["dim", "pressure", "--A", "4", "--s", "0.5", "--depth", "8"], dir.path());
    assert!(p["outputs"]["value"].as_f64().unwrap() > 0.0);
}

/// Replaying a record's argv reproduces its outputs exactly.
#[test]
fn records_replay() {
    let dir = tmp();
    let runs: [&[&str]; 5] = [
        &["cf", "--eval", "[0;2,1,2,1]"],
        &["graph", "--bs", "3,1,2", "--trim"],
        &["census", "--n", "4", "--no-cache"],
        &["orbit", "numerators", "--A", "3", "--N", "200"],
        &["dim", "upper", "--s", "0.799", "--cells", "10000"],
    ];
    for args in runs {
        let first = ok(args, dir.path());
        let argv: Vec<String> = serde_json::from_value(first["argv"].clone()).unwrap();
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        let again = ok(&argv, dir.path());
        assert_eq!(first["outputs"], again["outputs"], "{args:?}");
        assert_eq!(first["command"], again["command"]);
    }
}

#[test]
fn cache_hits_are_identical() {
    let dir = tmp();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    std::fs::write(dir.path().join("treefrac.toml"), format!("cache_dir = {c:?}\n")).unwrap();
    let fresh = treefrac(&["census", "--n", "6", "--witnesses"], dir.path());
    let cached = treefrac(&["census", "--n", "6", "--witnesses"], dir.path());
    let (fresh, cached) = (fresh.record.unwrap(), cached.record.unwrap());
    assert_eq!(fresh["cache"], "miss");
    assert_eq!(cached["cache"], "hit");
    let bytes = |v: &Value| serde_json::to_string_pretty(&v["outputs"]).unwrap();
    assert_eq!(bytes(&fresh), bytes(&cached));
    let uncached = ok(&["census", "--n", "6", "--witnesses", "--no-cache"], dir.path());
    assert_eq!(bytes(&uncached), bytes(&cached));
}
