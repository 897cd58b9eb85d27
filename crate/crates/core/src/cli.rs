//! Command-line front end. `run` returns the process exit status: 0 on
//! success, 1 on a verification failure or a counterexample, 2 on usage,
//! input or budget errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::conditions::{d_star, ConditionKind};
use crate::constructive::{
    find_path_t5, find_path_t8, find_paths_t10, ConstructError, ConstructOptions, ConstructionTrace,
};
use crate::format::{parse_graph, write_graph};
use crate::graph::{Path, Vertex, WeightedGraph};
use crate::harness::{
    effective_d, exhaustive_family, random_family, search_counterexample, sweep, verify_instance, Problem,
    SearchOptions, SweepOptions, TheoremId,
};
use crate::instances::fixture_by_name;
use crate::oracle::{self, OracleBudget};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Parser)]
#[command(name = "heavypath", version, about = "Heavy paths and Hamilton paths in 2-connected weighted graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Graph file: vertex count, then one `u v weight` line per edge.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub x: Option<Vertex>,
    #[arg(long)]
    pub y: Option<Vertex>,
    /// Threshold as an exact rational, `p/q` or decimal.
    #[arg(long, value_parser = parse_d)]
    pub d: Option<Rational>,
    /// Node limit per oracle search.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    pub json: bool,
}

fn parse_d(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact optima for the given graph and anchors.
    Oracle {
        #[command(flatten)]
        common: Common,
    },
    /// Run the constructive algorithm for T5, T8 or T10.
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theorem: TheoremId,
        /// Allow d above d*; the result then carries no guarantee.
        #[arg(long)]
        force: bool,
    },
    /// Check one theorem on one graph at d = d*.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theorem: TheoremId,
    },
    /// Check theorems over an exhaustive or random family.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Theorems to check; all when omitted.
        #[arg(long, value_delimiter = ',')]
        theorem: Vec<TheoremId>,
        /// Vertex counts.
        #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 4, 5])]
        n: Vec<usize>,
        /// Weight set for the exhaustive family.
        #[arg(long, value_delimiter = ',', value_parser = parse_d, default_values = ["1", "2"])]
        weights: Vec<Rational>,
        /// Draw this many random graphs instead of enumerating.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 10)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write every record as one JSON line to this file.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Look for a counterexample to P1 or P2.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        problem: Problem,
        /// Sizes enumerated exhaustively (at most 5).
        #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 4, 5])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = parse_d, default_values = ["1", "2"])]
        weights: Vec<Rational>,
        /// Random draws after the exhaustive phase.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![6usize, 7])]
        random_n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 10)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop after this many instances.
        #[arg(long)]
        max_instances: Option<usize>,
        /// Accepted for symmetry with `sweep`; the search runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check a built-in fixture: fig1, fs2, fs3, fs2:p,q or fs3:p,q,r.
    Fixture {
        name: String,
        /// Print the fixture graph in the text format and exit.
        #[arg(long)]
        emit: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Parse a graph file and summarise it.
    CheckFormat {
        #[command(flatten)]
        common: Common,
    },
}

/// Failure with its exit status.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<(i32, String), Failure>;

/// Parses `argv` (program name first), runs the command and writes its
/// report to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((code, text)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn budget_of(limit: Option<u64>) -> OracleBudget {
    limit.map_or_else(OracleBudget::default, OracleBudget::with_node_limit)
}

fn load(common: &Common) -> Result<WeightedGraph, Failure> {
    let path = common.graph.as_ref().ok_or_else(|| usage("--graph is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn need(v: Option<Vertex>, flag: &str) -> Result<Vertex, Failure> {
    v.ok_or_else(|| usage(format!("--{flag} is required")))
}

fn oracle_failure(e: oracle::OracleError) -> Failure {
    usage(e.to_string())
}

fn seq(p: &Path) -> Value {
    json!(p.vertices())
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn render(json_mode: bool, doc: &Value, text: String) -> String {
    if json_mode {
        format!("{}\n", serde_json::to_string_pretty(doc).expect("json"))
    } else {
        text
    }
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Oracle { common } => cmd_oracle(&common),
        Command::Construct { common, theorem, force } => cmd_construct(&common, theorem, force),
        Command::Verify { common, theorem } => cmd_verify(&common, theorem),
        Command::Sweep { common, theorem, n, weights, random, lo, hi, seed, jobs, records } => {
            cmd_sweep(&common, theorem, n, weights, random, (lo, hi), seed, jobs, records)
        }
        Command::Search { common, problem, n, weights, random, random_n, lo, hi, seed, max_instances, jobs: _ } => {
            let opts = SearchOptions {
                exhaustive_n: n,
                weights,
                random_n,
                random_weights: (lo, hi),
                random_draws: random,
                seed,
                max_instances,
                budget: budget_of(common.budget),
            };
            cmd_search(&common, problem, &opts)
        }
        Command::Fixture { name, emit, budget, json } => cmd_fixture(&name, emit, budget, json),
        Command::CheckFormat { common } => {
            let g = load(&common)?;
            let doc = json!({
                "command": "check-format",
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "total_weight": rat(&g.total_weight()),
                "two_connected": g.is_two_connected(),
            });
            let text = format!(
                "vertices {}\nedges {}\ntotal weight {}\n2-connected {}\n",
                g.vertex_count(),
                g.edge_count(),
                format_rational(&g.total_weight()),
                g.is_two_connected()
            );
            Ok((0, render(common.json, &doc, text)))
        }
    }
}

fn cmd_oracle(common: &Common) -> Outcome {
    let start = Instant::now();
    let g = load(common)?;
    let b = budget_of(common.budget);
    let mut doc = json!({ "command": "oracle", "inputs": { "x": common.x, "y": common.y } });
    let mut text = String::new();
    if let Some(h) = oracle::heaviest_path(&g, &b).map_err(oracle_failure)? {
        text += &format!("heaviest path: weight {} : {}\n", format_rational(&h.weight), h.path);
        doc["heaviest_path"] = json!({ "weight": rat(&h.weight), "path": seq(&h.path) });
    }
    let ham = oracle::hamilton_path(&g, &b).map_err(oracle_failure)?;
    text += &format!("hamilton path: {}\n", ham.as_ref().map_or("absent".into(), |p| p.to_string()));
    doc["hamilton_path"] = ham.as_ref().map_or(Value::Null, seq);
    if let Some(c) = oracle::heaviest_cycle(&g, &b).map_err(oracle_failure)? {
        text += &format!("heaviest cycle: weight {} : {:?}\n", format_rational(&c.weight), c.vertices);
        doc["heaviest_cycle"] = json!({ "weight": rat(&c.weight), "cycle": c.vertices });
    }
    let hc = oracle::hamilton_cycle(&g, &b).map_err(oracle_failure)?;
    text += &format!("hamilton cycle: {}\n", hc.as_ref().map_or("absent".into(), |c| format!("{c:?}")));
    doc["hamilton_cycle"] = json!(hc);
    if let Some(x) = common.x {
        if !g.contains(x) {
            return Err(usage(format!("vertex {x} is not in the graph")));
        }
        let h = oracle::heaviest_x_path(&g, x, &b).map_err(oracle_failure)?;
        text += &format!("heaviest x-path: weight {} : {}\n", format_rational(&h.weight), h.path);
        doc["heaviest_x_path"] = json!({ "weight": rat(&h.weight), "path": seq(&h.path) });
        let hx = oracle::hamilton_x_path(&g, x, &b).map_err(oracle_failure)?;
        text += &format!("hamilton x-path: {}\n", hx.as_ref().map_or("absent".into(), |p| p.to_string()));
        doc["hamilton_x_path"] = hx.as_ref().map_or(Value::Null, seq);
        if let Some(y) = common.y {
            if !g.contains(y) || x == y {
                return Err(usage("--y must be a vertex other than --x"));
            }
            if let Some(h) = oracle::heaviest_xy_path(&g, x, y, &b).map_err(oracle_failure)? {
                text += &format!("heaviest (x,y)-path: weight {} : {}\n", format_rational(&h.weight), h.path);
                doc["heaviest_xy_path"] = json!({ "weight": rat(&h.weight), "path": seq(&h.path) });
            }
            let hxy = oracle::hamilton_xy_path(&g, x, y, &b).map_err(oracle_failure)?;
            text += &format!("hamilton (x,y)-path: {}\n", hxy.as_ref().map_or("absent".into(), |p| p.to_string()));
            doc["hamilton_xy_path"] = hxy.as_ref().map_or(Value::Null, seq);
            let pair = oracle::best_disjoint_pair(&g, x, y, &b).map_err(oracle_failure)?;
            text += &format!(
                "best disjoint pair: weight {} : {} | {}\n",
                format_rational(&pair.weight),
                pair.first,
                pair.second
            );
            doc["best_disjoint_pair"] =
                json!({ "weight": rat(&pair.weight), "paths": [seq(&pair.first), seq(&pair.second)] });
            let span = oracle::spanning_disjoint_pair(&g, x, y, &b).map_err(oracle_failure)?;
            text += &format!(
                "spanning disjoint pair: {}\n",
                span.as_ref().map_or("absent".into(), |(p, q)| format!("{p} | {q}"))
            );
            doc["spanning_disjoint_pair"] = span.as_ref().map_or(Value::Null, |(p, q)| json!([seq(p), seq(q)]));
        }
    }
    doc["timings"] = json!({ "micros": start.elapsed().as_micros() as u64 });
    Ok((0, render(common.json, &doc, text)))
}

fn cmd_construct(common: &Common, theorem: TheoremId, force: bool) -> Outcome {
    let start = Instant::now();
    let g = load(common)?;
    let x = need(common.x, "x")?;
    let anchors: Vec<Vertex> = match theorem {
        TheoremId::T8 => vec![x],
        TheoremId::T5 | TheoremId::T10 => vec![x, need(common.y, "y")?],
        other => return Err(usage(format!("{other} has no constructive algorithm; use T5, T8 or T10"))),
    };
    if let Some(&v) = anchors.iter().find(|&&v| !g.contains(v)) {
        return Err(usage(format!("vertex {v} is not in the graph")));
    }
    let kind = theorem.condition();
    let ds = d_star(&g, kind, &anchors).map_err(|e| usage(e.to_string()))?.d_star;
    let d = common.d.clone().unwrap_or_else(|| effective_d(&g, &ds));
    let opts = ConstructOptions { budget: budget_of(common.budget), force };
    let result: Result<(String, Vec<&'static str>, Vec<Path>, ConstructionTrace), ConstructError> = match theorem {
        TheoremId::T5 => find_path_t5(&g, x, anchors[1], &d, &opts)
            .map(|(o, t)| (o.to_string(), vec![o.label()], vec![o.path().clone()], t)),
        TheoremId::T8 => {
            find_path_t8(&g, x, &d, &opts).map(|(o, t)| (o.to_string(), vec![o.label()], vec![o.path().clone()], t))
        }
        _ => find_paths_t10(&g, x, anchors[1], &d, &opts)
            .map(|(o, t)| (o.to_string(), vec![o.label()], o.paths().into_iter().cloned().collect(), t)),
    };
    let (summary, label, paths, trace) = match result {
        Ok(r) => r,
        Err(e @ (ConstructError::HypothesisViolated { .. }
        | ConstructError::MissingVertex(_)
        | ConstructError::SameAnchors(_)
        | ConstructError::NotTwoConnected
        | ConstructError::Oracle(_))) => {
            let hint = if matches!(e, ConstructError::HypothesisViolated { .. }) { "; pass --force to run anyway" } else { "" };
            return Err(usage(format!("{e}{hint}")));
        }
        Err(e) => {
            let note = if force && !ds.admits(&d) { " (d exceeds d*, guarantees are void)" } else { "" };
            return Err(Failure { code: 1, message: format!("{e}{note}") });
        }
    };
    let void = force && !ds.admits(&d);
    let doc = json!({
        "command": "construct",
        "inputs": { "theorem": theorem, "anchors": anchors, "d": rat(&d), "force": force },
        "d_star": { kind.name(): ds },
        "outcome": label[0],
        "guarantee_void": void,
        "witness": paths.iter().map(seq).collect::<Vec<_>>(),
        "witness_weights": paths.iter().map(|p| rat(p.weight())).collect::<Vec<_>>(),
        "trace": trace,
        "timings": { "micros": start.elapsed().as_micros() as u64 },
    });
    let mut text = format!("{summary}\n");
    if void {
        text += "note: d exceeds d*, guarantees are void\n";
    }
    text += &format!("d = {}, d*({}) = {}\n", format_rational(&d), kind.name(), ds);
    text += &trace.to_text();
    Ok((0, render(common.json, &doc, text)))
}

fn cmd_verify(common: &Common, theorem: TheoremId) -> Outcome {
    let g = load(common)?;
    let anchors: Vec<Vertex> = match theorem.arity() {
        0 => vec![],
        1 => vec![need(common.x, "x")?],
        _ => vec![need(common.x, "x")?, need(common.y, "y")?],
    };
    if common.d.is_some() {
        return Err(usage("verify always uses d = d*; use construct --d to choose d"));
    }
    let rec = verify_instance(&g, &anchors, theorem, &budget_of(common.budget)).map_err(|e| usage(e.to_string()))?;
    let code = if rec.pass { 0 } else { 1 };
    let doc = json!({
        "command": "verify",
        "inputs": { "theorem": theorem, "anchors": anchors },
        "d_star": { theorem.condition().name(): rec.d_star },
        "outcome": rec,
        "timings": { "micros": rec.micros },
    });
    let text = format!(
        "{} {} anchors {:?}: d* = {}, d = {}, oracle {}, constructive {}, {}{}\n",
        theorem,
        if rec.pass { "pass" } else { "FAIL" },
        anchors,
        rec.d_star,
        format_rational(&rec.d),
        rec.oracle.map_or("none".into(), |c| c.to_string()),
        rec.constructive.map_or("-".into(), |c| c.to_string()),
        format!("feasible {:?}", rec.feasible),
        rec.detail.as_ref().map_or(String::new(), |d| format!(" ({d})")),
    );
    Ok((code, render(common.json, &doc, text)))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    common: &Common,
    theorems: Vec<TheoremId>,
    ns: Vec<usize>,
    weights: Vec<Rational>,
    random: Option<usize>,
    (lo, hi): (i64, i64),
    seed: u64,
    jobs: Option<usize>,
    records: Option<PathBuf>,
) -> Outcome {
    let start = Instant::now();
    let theorems = if theorems.is_empty() { TheoremId::ALL.to_vec() } else { theorems };
    let opts = SweepOptions { budget: budget_of(common.budget), jobs };
    let mut sink = match &records {
        Some(p) => Some(std::io::BufWriter::new(
            std::fs::File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        )),
        None => None,
    };
    let mut write_err = None;
    let mut on_record = |r: &crate::harness::VerificationRecord| {
        if let Some(w) = sink.as_mut() {
            if let Err(e) = writeln!(w, "{}", serde_json::to_string(r).expect("json")) {
                write_err.get_or_insert(e);
            }
        }
    };
    let report = match random {
        Some(count) => {
            if ns.is_empty() {
                return Err(usage("--n must list at least one size"));
            }
            let mut family_err = None;
            let family = random_family(&ns, lo, hi, count, seed).map_while(|g| match g {
                Ok(g) => Some(g),
                Err(e) => {
                    family_err = Some(e);
                    None
                }
            });
            let rep = sweep(family, &theorems, &opts, &mut on_record);
            if let Some(e) = family_err {
                return Err(usage(e.to_string()));
            }
            rep
        }
        None => {
            let family = exhaustive_family(ns.clone(), &weights).map_err(|e| usage(e.to_string()))?;
            sweep(family, &theorems, &opts, &mut on_record)
        }
    };
    drop(on_record);
    if let Some(mut w) = sink {
        w.flush().map_err(|e| usage(e.to_string()))?;
    }
    if let Some(e) = write_err {
        return Err(usage(format!("writing records: {e}")));
    }
    let code = if report.is_clean() { 0 } else { 1 };
    let doc = json!({
        "command": "sweep",
        "inputs": {
            "theorems": theorems,
            "n": ns,
            "weights": weights.iter().map(rat).collect::<Vec<_>>(),
            "random": random,
            "weight_range": [lo, hi],
            "seed": seed,
        },
        "outcome": report,
        "timings": { "micros": start.elapsed().as_micros() as u64 },
    });
    Ok((code, render(common.json, &doc, report.to_string())))
}

fn cmd_search(common: &Common, problem: Problem, opts: &SearchOptions) -> Outcome {
    let start = Instant::now();
    let report = search_counterexample(problem, opts).map_err(|e| usage(e.to_string()))?;
    let code = if report.certificate.is_some() { 1 } else { 0 };
    let doc = json!({
        "command": "search",
        "inputs": {
            "problem": problem,
            "n": opts.exhaustive_n,
            "weights": opts.weights.iter().map(rat).collect::<Vec<_>>(),
            "random": opts.random_draws,
            "random_n": opts.random_n,
            "weight_range": [opts.random_weights.0, opts.random_weights.1],
            "seed": opts.seed,
            "max_instances": opts.max_instances,
        },
        "outcome": report,
        "timings": { "micros": start.elapsed().as_micros() as u64 },
    });
    Ok((code, render(common.json, &doc, format!("{problem}: {report}\n"))))
}

fn cmd_fixture(name: &str, emit: bool, budget: Option<u64>, json_mode: bool) -> Outcome {
    let start = Instant::now();
    let f = fixture_by_name(name).map_err(|e| usage(e.to_string()))?;
    if emit {
        return Ok((0, write_graph(&f.graph)));
    }
    let b = budget_of(budget);
    let g = &f.graph;
    let results = f.check(&b).map_err(oracle_failure)?;
    let mut d_stars = serde_json::Map::new();
    let mut text = format!("fixture {} (x = {}, y = {})\n", f.name, f.x, f.y);
    for (label, excluded) in [("xy", vec![f.x, f.y]), ("x", vec![f.x])] {
        let mut per = serde_json::Map::new();
        for kind in ConditionKind::ALL {
            let ds = d_star(g, kind, &excluded).map_err(|e| usage(e.to_string()))?.d_star;
            text += &format!("d*({}, {{{label}}}) = {}\n", kind.name(), ds);
            per.insert(kind.name().to_string(), serde_json::to_value(&ds).expect("json"));
        }
        d_stars.insert(label.to_string(), Value::Object(per));
    }
    let xy = oracle::heaviest_xy_path(g, f.x, f.y, &b).map_err(oracle_failure)?;
    let ham = oracle::hamilton_xy_path(g, f.x, f.y, &b).map_err(oracle_failure)?;
    let xp = oracle::heaviest_x_path(g, f.x, &b).map_err(oracle_failure)?;
    let hamx = oracle::hamilton_x_path(g, f.x, &b).map_err(oracle_failure)?;
    let span = oracle::spanning_disjoint_pair(g, f.x, f.y, &b).map_err(oracle_failure)?;
    if let Some(h) = &xy {
        text += &format!("heaviest (x,y)-path: weight {} : {}\n", format_rational(&h.weight), h.path);
    }
    text += &format!("hamilton (x,y)-path: {}\n", ham.as_ref().map_or("absent".into(), |p| p.to_string()));
    text += &format!("heaviest x-path: weight {} : {}\n", format_rational(&xp.weight), xp.path);
    text += &format!("hamilton x-path: {}\n", hamx.as_ref().map_or("absent".into(), |p| p.to_string()));
    text += &format!(
        "spanning disjoint pair: {}\n",
        span.as_ref().map_or("absent".into(), |(p, q)| format!("{p} | {q}"))
    );
    for r in &results {
        text += &format!("{} {}: observed {}\n", if r.pass { "ok  " } else { "FAIL" }, r.expectation, r.observed);
    }
    let all_pass = results.iter().all(|r| r.pass);
    let doc = json!({
        "command": "fixture",
        "inputs": { "name": f.name, "x": f.x, "y": f.y },
        "graph": write_graph(g),
        "d_star": d_stars,
        "outcome": {
            "heaviest_xy_path": xy.as_ref().map(|h| json!({ "weight": rat(&h.weight), "path": seq(&h.path) })),
            "hamilton_xy_path": ham.as_ref().map(seq),
            "heaviest_x_path": { "weight": rat(&xp.weight), "path": seq(&xp.path) },
            "hamilton_x_path": hamx.as_ref().map(seq),
            "spanning_disjoint_pair": span.as_ref().map(|(p, q)| json!([seq(p), seq(q)])),
            "expectations": results,
            "pass": all_pass,
        },
        "timings": { "micros": start.elapsed().as_micros() as u64 },
    });
    Ok((if all_pass { 0 } else { 1 }, render(json_mode, &doc, text)))
}
