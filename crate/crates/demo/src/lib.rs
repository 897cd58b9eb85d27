//! Browser bindings. Each exported function takes graph text and returns a
//! JSON string; errors come back as a thrown string.

use heavypath::conditions::{d_star, ConditionKind};
use heavypath::constructive::{find_path_t5, find_path_t8, find_paths_t10, ConstructOptions};
use heavypath::format::{parse_graph, write_graph};
use heavypath::graph::{Path, Vertex, WeightedGraph};
use heavypath::harness::{effective_d, TheoremId};
use heavypath::instances::fixture_by_name;
use heavypath::oracle::{self, OracleBudget};
use heavypath::rational::{format_rational, parse_rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn seq(p: &Path) -> Value {
    json!(p.vertices())
}

fn load(text: &str) -> Result<WeightedGraph, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    if !g.is_two_connected() {
        return Err("graph is not 2-connected".into());
    }
    Ok(g)
}

fn vertex(g: &WeightedGraph, v: u32) -> Result<Vertex, String> {
    let v = v as Vertex;
    if g.contains(v) {
        Ok(v)
    } else {
        Err(format!("vertex {v} is not in the graph"))
    }
}

/// Graph text and anchors of a named fixture.
pub fn fixture_json(name: &str) -> Result<String, String> {
    let f = fixture_by_name(name).map_err(|e| e.to_string())?;
    Ok(json!({ "name": f.name, "graph": write_graph(&f.graph), "x": f.x, "y": f.y }).to_string())
}

/// Every `d*` for the anchor sets `{x, y}`, `{x}` and none, plus the exact
/// optima the conclusions talk about.
pub fn analyze_json(text: &str, x: u32, y: u32) -> Result<String, String> {
    let g = load(text)?;
    let (x, y) = (vertex(&g, x)?, vertex(&g, y)?);
    if x == y {
        return Err("x and y must differ".into());
    }
    let b = OracleBudget::default();
    let mut d_stars = serde_json::Map::new();
    for (label, excluded) in [("xy", vec![x, y]), ("x", vec![x]), ("none", vec![])] {
        let mut per = serde_json::Map::new();
        for kind in ConditionKind::ALL {
            let ds = d_star(&g, kind, &excluded).map_err(|e| e.to_string())?.d_star;
            per.insert(kind.name().into(), Value::String(ds.to_string()));
        }
        d_stars.insert(label.into(), Value::Object(per));
    }
    let err = |e: oracle::OracleError| e.to_string();
    let xy = oracle::heaviest_xy_path(&g, x, y, &b).map_err(err)?;
    let xp = oracle::heaviest_x_path(&g, x, &b).map_err(err)?;
    let pair = oracle::best_disjoint_pair(&g, x, y, &b).map_err(err)?;
    let ham = oracle::hamilton_xy_path(&g, x, y, &b).map_err(err)?;
    let hamx = oracle::hamilton_x_path(&g, x, &b).map_err(err)?;
    let span = oracle::spanning_disjoint_pair(&g, x, y, &b).map_err(err)?;
    Ok(json!({
        "d_star": d_stars,
        "heaviest_xy_path": xy.map(|h| json!({ "weight": format_rational(&h.weight), "path": seq(&h.path) })),
        "heaviest_x_path": { "weight": format_rational(&xp.weight), "path": seq(&xp.path) },
        "best_disjoint_pair": { "weight": format_rational(&pair.weight), "paths": [seq(&pair.first), seq(&pair.second)] },
        "hamilton_xy_path": ham.as_ref().map(seq),
        "hamilton_x_path": hamx.as_ref().map(seq),
        "spanning_disjoint_pair": span.as_ref().map(|(p, q)| json!([seq(p), seq(q)])),
    })
    .to_string())
}

/// Runs the T5, T8 or T10 construction. An empty `d` means `d*`.
pub fn construct_json(text: &str, theorem: &str, x: u32, y: u32, d: &str) -> Result<String, String> {
    let g = load(text)?;
    let theorem: TheoremId = theorem.parse().map_err(|e: heavypath::harness::UnknownTheorem| e.to_string())?;
    let x = vertex(&g, x)?;
    let anchors = match theorem {
        TheoremId::T8 => vec![x],
        TheoremId::T5 | TheoremId::T10 => vec![x, vertex(&g, y)?],
        other => return Err(format!("{other} has no construction; use T5, T8 or T10")),
    };
    let ds = d_star(&g, theorem.condition(), &anchors).map_err(|e| e.to_string())?.d_star;
    let d = if d.trim().is_empty() { effective_d(&g, &ds) } else { parse_rational(d).map_err(|e| e.to_string())? };
    let opts = ConstructOptions::default();
    let (label, paths, trace) = match theorem {
        TheoremId::T5 => find_path_t5(&g, x, anchors[1], &d, &opts)
            .map(|(o, t)| (o.label(), vec![o.path().clone()], t)),
        TheoremId::T8 => find_path_t8(&g, x, &d, &opts).map(|(o, t)| (o.label(), vec![o.path().clone()], t)),
        _ => find_paths_t10(&g, x, anchors[1], &d, &opts)
            .map(|(o, t)| (o.label(), o.paths().into_iter().cloned().collect(), t)),
    }
    .map_err(|e| e.to_string())?;
    Ok(json!({
        "theorem": theorem,
        "d": format_rational(&d),
        "d_star": ds.to_string(),
        "outcome": label,
        "witness": paths.iter().map(seq).collect::<Vec<_>>(),
        "weights": paths.iter().map(|p| format_rational(p.weight())).collect::<Vec<_>>(),
        "trace": trace.to_text(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, JsValue> {
    fixture_json(name).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(graph: &str, x: u32, y: u32) -> Result<String, JsValue> {
    analyze_json(graph, x, y).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn construct(graph: &str, theorem: &str, x: u32, y: u32, d: &str) -> Result<String, JsValue> {
    construct_json(graph, theorem, x, y, d).map_err(|e| JsValue::from_str(&e))
}
