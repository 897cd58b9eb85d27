use std::io::Write;

use heavypath::cli::run;
use heavypath::format::parse_graph;
use heavypath::instances::fixture_by_name;
use serde_json::Value;
use tempfile::NamedTempFile;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("heavypath").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const TRIANGLE: &str = "3\n0 1 1\n1 2 1\n0 2 1\n";

#[test]
fn construct_triangle_heavy_path() {
    let f = graph_file(TRIANGLE);
    let p = f.path().to_str().unwrap();
    let (code, out, _) = call(&["construct", "--theorem", "T5", "--graph", p, "--x", "0", "--y", "1", "--d", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("HeavyPath 0 2 1"), "{out}");
}

#[test]
fn construct_json_has_trace_and_witness() {
    let f = graph_file(TRIANGLE);
    let p = f.path().to_str().unwrap();
    let (code, out, _) =
        call(&["construct", "--theorem", "T10", "--graph", p, "--x", "0", "--y", "1", "--d", "3/2", "--json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["command"], "construct");
    assert_eq!(doc["witness"][0], serde_json::json!([0, 2, 1]));
    assert_eq!(doc["inputs"]["d"], "3/2");
    assert!(doc["trace"]["case"].is_string());
}

#[test]
fn construct_refuses_d_above_d_star_without_force() {
    let g = heavypath::format::write_graph(&fixture_by_name("fig1").unwrap().graph);
    let f = graph_file(&g);
    let p = f.path().to_str().unwrap();
    let args = ["construct", "--theorem", "T5", "--graph", p, "--x", "0", "--y", "1", "--d", "5"];
    let (code, _, err) = call(&args);
    assert_eq!(code, 2);
    assert!(err.contains("--force"), "{err}");
    let mut forced = args.to_vec();
    forced.push("--force");
    // fig1 has neither a path of weight 5 nor a Hamilton (x,y)-path
    let (code, _, err) = call(&forced);
    assert_eq!(code, 1);
    assert!(err.contains("guarantees are void"), "{err}");
    forced[10] = "4";
    let (code, out, _) = call(&forced);
    assert_eq!(code, 0);
    assert!(out.contains("guarantees are void"), "{out}");
}

#[test]
fn verify_two_cliques_t10_passes_with_spanning_pair() {
    let (code, text, _) = call(&["fixture", "fs2", "--emit"]);
    assert_eq!(code, 0);
    let f = graph_file(&text);
    let p = f.path().to_str().unwrap();
    let (code, out, _) = call(&["verify", "--theorem", "T10", "--graph", p, "--x", "0", "--y", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle SpanningDisjointPair"), "{out}");
}

#[test]
fn fixture_fig1_json() {
    let (code, out, _) = call(&["fixture", "fig1", "--json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["d_star"]["xy"]["PairMaxDist2"], "5");
    assert_eq!(doc["outcome"]["heaviest_xy_path"]["weight"], "4");
    assert!(doc["outcome"]["hamilton_xy_path"].is_null());
}

#[test]
fn emitted_fixtures_round_trip() {
    for name in ["fig1", "fs2", "fs3", "fs2:3,5", "fs3:3,4,3"] {
        let (code, text, _) = call(&["fixture", name, "--emit"]);
        assert_eq!(code, 0);
        assert_eq!(parse_graph(&text).unwrap(), fixture_by_name(name).unwrap().graph, "{name}");
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(call(&["bogus"]).0, 2);
    assert_eq!(call(&["oracle", "--unknown"]).0, 2);
    assert_eq!(call(&["oracle", "--graph", "/nonexistent/graph"]).0, 2);
    let bad = graph_file("3\n0 1 1\n0 1 2\n");
    let (code, _, err) = call(&["check-format", "--graph", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(call(&["fixture", "nope"]).0, 2);
    assert_eq!(call(&["construct", "--theorem", "T4", "--graph", "x", "--x", "0"]).0, 2);
}

#[test]
fn oracle_reports_optima() {
    let f = graph_file(TRIANGLE);
    let p = f.path().to_str().unwrap();
    let (code, out, _) = call(&["oracle", "--graph", p, "--x", "0", "--y", "1", "--json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["heaviest_xy_path"]["weight"], "2");
    assert_eq!(doc["heaviest_cycle"]["weight"], "3");
}

#[test]
fn small_sweep_and_search() {
    let (code, out, _) = call(&["sweep", "--n", "3,4", "--weights", "1,2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("failed 0"), "{out}");
    let records = NamedTempFile::new().unwrap();
    let rp = records.path().to_str().unwrap();
    let (code, _, _) = call(&["sweep", "--random", "3", "--n", "6", "--theorem", "T5,T8", "--seed", "4", "--records", rp]);
    assert_eq!(code, 0);
    let lines = std::fs::read_to_string(records.path()).unwrap();
    assert!(lines.lines().count() > 0);
    for line in lines.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["pass"], true);
    }
    let (code, out, _) = call(&["search", "--problem", "P1", "--n", "3,4", "--json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert!(doc["outcome"]["certificate"].is_null());
}
