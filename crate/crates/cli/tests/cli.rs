use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use surface_curves::{fills, make_surface, reference_triangulation, MultiCurve};

fn cctool(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cctool")).current_dir(dir).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cctool-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write_curve(dir: &Path, name: &str, c: &MultiCurve) {
    std::fs::write(dir.join(name), serde_json::to_string(&c.to_file()).unwrap()).unwrap();
}

fn filling_pair(g: u32, m: u32, norm: u64) -> (MultiCurve, MultiCurve) {
    let cs = reference_triangulation(make_surface(g, m).unwrap()).unwrap().enumerate_curves(norm);
    for a in &cs {
        for b in &cs {
            if fills(a, b).unwrap() {
                return (a.clone(), b.clone());
            }
        }
    }
    panic!("no filling pair");
}

#[test]
fn surface_info() {
    let out = cctool(&scratch("info"), &["surface", "info", "--g", "2", "--m", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["complexity"], 3);
    assert_eq!(v["euler_characteristic"], -2);
    assert_eq!(v["standard_track"]["switches"], 12);
    assert_eq!(v["provenance"]["tool"], "cctool");
}

#[test]
fn exit_codes_for_bad_usage() {
    let d = scratch("usage");
    assert_eq!(cctool(&d, &["surface", "nope"]).status.code(), Some(2));
    assert_eq!(cctool(&d, &["cc", "qg", "--seed", "1", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(cctool(&d, &["cc", "qg", "--seed", "1", "--tol", "0.1"]).status.code(), Some(2));
    let unseeded = cctool(&d, &["seq", "generate"]);
    assert_eq!(unseeded.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unseeded.stderr).contains("--seed"));
    assert_eq!(cctool(&d, &["curve", "fills", "--in", "missing.json"]).status.code(), Some(2));
    assert_eq!(cctool(&d, &["surface", "info", "--g", "0", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn curve_commands() {
    let d = scratch("curve");
    let (a, b) = filling_pair(0, 5, 12);
    write_curve(&d, "a.json", &a);
    write_curve(&d, "b.json", &b);
    let v = json(&cctool(&d, &["curve", "intersect", "--in", "a.json", "--in", "b.json", "--oracle"]));
    assert_eq!(v["intersection"], v["oracle"]);
    let f = cctool(&d, &["curve", "fills", "--in", "a.json", "--in", "b.json"]);
    assert_eq!(json(&f)["fills"], true);
    let n = json(&cctool(&d, &["curve", "normalize", "--in", "a.json"]));
    assert_eq!(n["dropped_peripheral"], 0);
    assert_eq!(n["curve"]["coords"], serde_json::to_value(&a.coords).unwrap());
    let dist = json(&cctool(&d, &["cc", "distance", "--in", "a.json", "--in", "b.json"]));
    assert!(dist["bfs"].as_u64().unwrap() >= 3);
}

#[test]
fn track_commands() {
    let d = scratch("track");
    let v = json(&cctool(&d, &["track", "validate", "--g", "1", "--m", "2"]));
    assert_eq!(v["diagnostics"]["complete"], true);
    let cycles = json(&cctool(&d, &["track", "vertex-cycles", "--g", "1", "--m", "2"]));
    assert!(cycles["max_entry"].as_i64().unwrap() <= 2);
    assert_eq!(json(&cctool(&d, &["track", "recurrent"]))["recurrent"], true);
    std::fs::write(d.join("bad.json"), r#"{"surface":{"g":0,"m":5},"switches":[],"branches":[[[0,0],[0,1]]],"regions":[]}"#).unwrap();
    let bad = cctool(&d, &["track", "validate", "--in", "bad.json"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["valid"], false);
}

#[test]
fn reports_are_deterministic() {
    let d = scratch("determinism");
    let args = ["cc", "qg", "--seed", "5", "--samples", "4", "--maxnorm", "8"];
    let (x, y) = (cctool(&d, &args), cctool(&d, &args));
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, y.stdout);
    let other = cctool(&d, &["cc", "qg", "--seed", "6", "--samples", "4", "--maxnorm", "8"]);
    assert_eq!(json(&other)["provenance"]["seed"], 6);
    assert_eq!(json(&other)["provenance"]["command"], "cc qg");
}

#[test]
fn csv_has_one_row_per_sample() {
    let d = scratch("csv");
    let out = cctool(&d, &["cc", "delta-scan", "--seed", "2", "--samples", "5", "--maxnorm", "8", "--csv", "delta.csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(d.join("delta.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 5);
    assert!(text.starts_with("delta,sample,targets"));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["provenance"]["command"], "cc delta-scan");
    let qg = cctool(&d, &["cc", "qg", "--seed", "2", "--samples", "3", "--maxnorm", "8", "--csv", "qg.csv"]);
    assert_eq!(qg.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(d.join("qg.csv")).unwrap().lines().count(), 4);
}

#[test]
fn prop35_instances() {
    let d = scratch("prop35");
    let adjacency: Vec<Vec<usize>> = vec![vec![1], vec![0, 2, 3], vec![1], vec![1]];
    std::fs::write(d.join("tree.json"), serde_json::to_string(&adjacency).unwrap()).unwrap();
    let tree = cctool(&d, &["cc", "prop35", "--graph", "tree.json", "--family", "geodesics", "--D", "1"]);
    assert_eq!(tree.status.code(), Some(0));
    let v = json(&tree);
    assert_eq!(v["report"]["verified"], true);
    assert_eq!(v["bound"]["delta"], 73.0);
    let grid = cctool(&d, &["cc", "prop35", "--grid", "12", "--family", "lpaths", "--seed", "1", "--samples", "5000"]);
    assert_eq!(grid.status.code(), Some(1));
    assert_eq!(json(&grid)["report"]["violation"]["condition"], 3);
    assert_eq!(cctool(&d, &["cc", "prop35", "--tree", "9", "--family", "lpaths"]).status.code(), Some(2));
}

#[test]
fn flat_round_trip() {
    let d = scratch("flat");
    let (a, b) = filling_pair(1, 2, 10);
    write_curve(&d, "a.json", &a);
    write_curve(&d, "b.json", &b);
    let built = cctool(&d, &["flat", "build", "--in", "a.json", "--in", "b.json", "--a", "3/2", "--b", "1/3", "--out", "q.json"]);
    assert_eq!(built.status.code(), Some(0), "{}", String::from_utf8_lossy(&built.stderr));
    let check = json(&cctool(&d, &["flat", "check", "--in", "q.json"]));
    assert_eq!(check["consistent"], true);
    assert_eq!(check["gauss_bonnet_sum"], 0);
    let q = json(&cctool(&d, &["flat", "qbound", "--in", "q.json", "--curve", "a.json"]));
    assert_eq!(q["staircase"]["vertical_runs"], 0);

    // a complex with a dropped gluing is inconsistent
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(d.join("q.json")).unwrap()).unwrap();
    v["gluings"].as_array_mut().unwrap().pop();
    std::fs::write(d.join("broken.json"), v.to_string()).unwrap();
    let broken = cctool(&d, &["flat", "check", "--in", "broken.json"]);
    assert_eq!(broken.status.code(), Some(1));
    assert_eq!(json(&broken)["consistent"], false);
    assert_eq!(cctool(&d, &["flat", "build", "--in", "a.json", "--in", "a.json"]).status.code(), Some(2));
}

#[test]
fn ball_layers() {
    let v = json(&cctool(&scratch("ball"), &["cc", "ball", "--maxnorm", "12", "--radius", "2"]));
    let layers: Vec<u64> = serde_json::from_value(v["layers"].clone()).unwrap();
    assert_eq!(layers[0], 1);
    assert_eq!(layers.iter().sum::<u64>() + v["beyond_radius"].as_u64().unwrap(), v["universe"].as_u64().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn generated_sequences_transport_and_guide(seed in 0u64..1000, n in 1usize..12, surface in 0usize..3) {
        let (g, m) = [("0", "5"), ("1", "2"), ("2", "0")][surface];
        let d = scratch(&format!("prop-{seed}-{n}-{surface}"));
        let (seed, n) = (seed.to_string(), n.to_string());
        let gen = cctool(&d, &["seq", "generate", "--g", g, "--m", m, "--n", &n, "--seed", &seed, "--out", "s.json"]);
        prop_assert_eq!(gen.status.code(), Some(0));
        let t = cctool(&d, &["seq", "transport", "--in", "s.json"]);
        prop_assert_eq!(t.status.code(), Some(0));
        let guided = cctool(&d, &["seq", "guided", "--in", "s.json", "--cycle", "0"]);
        prop_assert_eq!(guided.status.code(), Some(0));
        let v = json(&guided);
        prop_assert!(v["steps"].as_u64().unwrap() <= v["cap"].as_u64().unwrap());
    }
}
