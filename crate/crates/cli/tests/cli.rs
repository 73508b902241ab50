use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hypervol::complex::SimplexSet;
use hypervol::discrepancy::WeightedPointSet;
use hypervol::l1cone::CutDecomposition;
use hypervol::randcx::ExpansionReport;
use hypervol::sparsify::SparsifyReport;
use hypervol::volumes::{VolumeCheck, VolumeFunction};
use serde::de::DeserializeOwned;
use tempfile::TempDir;

fn hypervol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypervol")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = hypervol(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn load<T: DeserializeOwned>(path: &Path) -> T {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn path_points(dir: &TempDir, n: usize) -> String {
    let p = path_str(dir, "path.json");
    let pts: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64]).collect();
    fs::write(&p, serde_json::json!({ "dim": 1, "points": pts }).to_string()).unwrap();
    p
}

#[test]
fn hypercut_enumeration_lists_minimum_cuts() {
    let cuts: Vec<SimplexSet> = serde_json::from_str(&ok(&["hypercuts", "enum", "--n", "5", "--d", "2"])).unwrap();
    assert!(!cuts.is_empty());
    assert_eq!(cuts.iter().map(SimplexSet::len).min(), Some(3));
}

#[test]
fn hypercut_check_classifies() {
    let dir = TempDir::new().unwrap();
    let f = path_str(&dir, "cut.json");
    // Triangles through the edge {0,1}: a minimum hypercut of K_4.
    fs::write(&f, r#"{"n":4,"d":2,"simplices":[[0,1,2],[0,1,3]]}"#).unwrap();
    let v: serde_json::Value = serde_json::from_str(&ok(&["hypercuts", "check", "--in", &f])).unwrap();
    assert_eq!(v["coboundary"], true);
    assert_eq!(v["hypercut"], true);
    fs::write(&f, r#"{"n":4,"d":2,"simplices":[[0,1,2],[0,1,3],[0,2,3]]}"#).unwrap();
    let v: serde_json::Value = serde_json::from_str(&ok(&["hypercuts", "check", "--in", &f])).unwrap();
    assert_eq!(v["coboundary"], false);
}

#[test]
fn strength_sparsify_on_path_metric() {
    let dir = TempDir::new().unwrap();
    let pts = path_points(&dir, 12);
    let dec = path_str(&dir, "dec.json");
    let out = path_str(&dir, "out.json");
    let report = path_str(&dir, "report.json");
    ok(&["decompose", "l1metric", "--points", &pts, "--out", &dec]);
    ok(&[
        "sparsify", "--engine", "strength", "--epsilon", "0.25", "--seed", "4", "--in", &dec, "--out", &out, "--report",
        &report,
    ]);
    let r: SparsifyReport = load(Path::new(&report));
    assert!(r.max_rel_error <= 0.25);
    assert_eq!(r.seed, 4);
    assert!(r.rho.is_some() && r.phases.is_some() && r.distinct_strengths.is_some());
    assert_eq!(r.support_size, r.support.len());

    let original: CutDecomposition = load(Path::new(&dec));
    let sparse: CutDecomposition = load(Path::new(&out));
    assert_eq!(sparse.terms.len(), r.support_size);
    for (a, b) in sparse.evaluate().values().iter().zip(original.evaluate().values()) {
        assert!((a / b - 1.0).abs() <= 0.25 + 1e-12);
    }
}

#[test]
fn spectral_engines_run_from_the_cli() {
    let dir = TempDir::new().unwrap();
    let pts = path_points(&dir, 10);
    let dec = path_str(&dir, "dec.json");
    ok(&["decompose", "l1metric", "--points", &pts, "--out", &dec]);
    for engine in ["spectral", "spectral-det"] {
        let report = path_str(&dir, &format!("{engine}.json"));
        ok(&["sparsify", "--engine", engine, "--epsilon", "0.3", "--in", &dec, "--out", &path_str(&dir, "o.json"), "--report", &report]);
        let r: SparsifyReport = load(Path::new(&report));
        assert_eq!(r.engine, engine);
        assert!(r.max_rel_error <= 0.3);
    }
}

#[test]
fn runs_are_reproducible_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let pts = path_points(&dir, 16);
    let dec = path_str(&dir, "dec.json");
    ok(&["decompose", "l1metric", "--points", &pts, "--out", &dec]);
    let run = |name: &str, seed: &str| {
        let report = path_str(&dir, name);
        ok(&["sparsify", "--epsilon", "0.4", "--seed", seed, "--in", &dec, "--out", &path_str(&dir, "o.json"), "--report", &report]);
        fs::read(report).unwrap()
    };
    assert_eq!(run("a.json", "9"), run("b.json", "9"));
    assert_eq!(
        ok(&["randcx", "--n", "6", "--p", "0.5", "--seed", "2"]),
        ok(&["randcx", "--n", "6", "--p", "0.5", "--seed", "2"])
    );
}

#[test]
fn emitted_json_round_trips() {
    let text = ok(&["randcx", "--n", "6", "--p", "0.7", "--seed", "5"]);
    let r: ExpansionReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);

    let dir = TempDir::new().unwrap();
    let pts = path_points(&dir, 7);
    let text = ok(&["decompose", "l1metric", "--points", &pts]);
    let c: CutDecomposition = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::from_str::<CutDecomposition>(&serde_json::to_string(&c).unwrap()).unwrap(), c);
}

#[test]
fn tree_decomposition_matches_cap_volume() {
    let dir = TempDir::new().unwrap();
    let tree = path_str(&dir, "tree.json");
    ok(&["hypertree", "--n", "5", "--d", "2", "--out", &tree]);
    let dec: CutDecomposition = serde_json::from_str(&ok(&["decompose", "tree", "--in", &tree])).unwrap();
    let cap: VolumeFunction = serde_json::from_str(&ok(&["volume", "cap", "--in", &tree])).unwrap();
    assert!(dec.evaluate().max_abs_diff(&cap).unwrap() < 1e-12);
    let cap_file = path_str(&dir, "cap.json");
    fs::write(&cap_file, serde_json::to_string(&cap).unwrap()).unwrap();
    let check: VolumeCheck = serde_json::from_str(&ok(&["volume", "check", "--in", &cap_file])).unwrap();
    assert!(check.holds);
}

#[test]
fn euclidean_volume_and_decomposition_agree() {
    let dir = TempDir::new().unwrap();
    let pts = path_str(&dir, "pts.json");
    fs::write(&pts, r#"{"dim":2,"points":[[0.1,0.2],[0.9,0.15],[0.5,0.95],[0.7,0.6],[0.35,0.45]]}"#).unwrap();
    let v: VolumeFunction = serde_json::from_str(&ok(&["volume", "euclidean", "--points", &pts, "--d", "2"])).unwrap();
    let c: CutDecomposition = serde_json::from_str(&ok(&["decompose", "euclid2d", "--points", &pts])).unwrap();
    for (a, b) in c.evaluate().values().iter().zip(v.values()) {
        assert!((a - b).abs() <= 1e-6 * b);
    }
    let out = hypervol(&["decompose", "mst", "--in", &{
        let f = path_str(&dir, "v.json");
        fs::write(&f, serde_json::to_string(&v).unwrap()).unwrap();
        f
    }]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("distortion"));
}

#[test]
fn discrepancy_writes_a_weighted_point_set() {
    let dir = TempDir::new().unwrap();
    let pts = path_str(&dir, "pts.json");
    let out = path_str(&dir, "p.json");
    fs::write(&pts, r#"{"dim":2,"points":[[0.1,0.2],[0.9,0.15],[0.5,0.95],[0.7,0.6],[0.35,0.45],[0.2,0.8]]}"#).unwrap();
    ok(&["discrepancy", "--points", &pts, "--epsilon", "0.3", "--seed", "1", "--out", &out]);
    let p: WeightedPointSet = load(Path::new(&out));
    assert!(!p.is_empty());
    assert!(ok(&["report", "--in", &out]).contains("weighted point set"));
}

#[test]
fn randcx_warns_when_default_p_is_clamped() {
    let out = hypervol(&["randcx", "--n", "6", "--seed", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let r: ExpansionReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.p, 1.0);
    assert_eq!(r.expansion, Some(1.0));
}

#[test]
fn unknown_flag_exits_one() {
    assert_eq!(hypervol(&["hypercuts", "enum", "--n", "5", "--d", "2", "--bogus"]).status.code(), Some(1));
    assert_eq!(hypervol(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn validation_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let pts = path_points(&dir, 6);
    let dec = path_str(&dir, "dec.json");
    ok(&["decompose", "l1metric", "--points", &pts, "--out", &dec]);
    let out = hypervol(&["sparsify", "--epsilon", "1.5", "--in", &dec]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));
}

#[test]
fn malformed_json_reports_location() {
    let dir = TempDir::new().unwrap();
    let f = path_str(&dir, "bad.json");
    fs::write(&f, "{\"dim\": 1,\n \"points\": [[0], [1]").unwrap();
    let out = hypervol(&["decompose", "l1metric", "--points", &f]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn guards_exit_two() {
    assert_eq!(hypervol(&["hypercuts", "enum", "--n", "8", "--d", "2"]).status.code(), Some(2));
    assert_eq!(hypervol(&["randcx", "--n", "9", "--p", "0.5"]).status.code(), Some(2));
}

#[test]
fn report_summarizes_artifacts() {
    let dir = TempDir::new().unwrap();
    let f = path_str(&dir, "rc.json");
    ok(&["randcx", "--n", "6", "--p", "0.8", "--seed", "3", "--out", &f]);
    let text = ok(&["report", "--in", &f]);
    assert!(text.contains("expansion (exact)"));
    let bogus = path_str(&dir, "x.json");
    fs::write(&bogus, r#"{"hello": 1}"#).unwrap();
    assert_eq!(hypervol(&["report", "--in", &bogus]).status.code(), Some(1));
}
