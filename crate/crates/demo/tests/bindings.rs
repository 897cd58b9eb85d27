use heavypath_demo::{analyze_json, construct_json, fixture_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn fixture_then_analyze() {
    let f = parse(&fixture_json("fig1").unwrap());
    let text = f["graph"].as_str().unwrap();
    let a = parse(&analyze_json(text, 0, 1).unwrap());
    assert_eq!(a["d_star"]["xy"]["PairMaxDist2"], "5");
    assert_eq!(a["heaviest_xy_path"]["weight"], "4");
    assert!(a["hamilton_xy_path"].is_null());
}

#[test]
fn construct_defaults_to_d_star() {
    let f = parse(&fixture_json("fs2").unwrap());
    let c = parse(&construct_json(f["graph"].as_str().unwrap(), "T10", 0, 1, "").unwrap());
    assert_eq!(c["outcome"], "SpanningDisjointPair");
    assert_eq!(c["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn errors_are_strings() {
    assert!(fixture_json("nope").is_err());
    assert!(analyze_json("3\n0 1 1\n1 2 1\n", 0, 1).unwrap_err().contains("2-connected"));
    assert!(construct_json("3\n0 1 1\n1 2 1\n0 2 1\n", "T2", 0, 1, "").is_err());
    assert!(construct_json("3\n0 1 1\n1 2 1\n0 2 1\n", "T5", 0, 9, "").is_err());
}
