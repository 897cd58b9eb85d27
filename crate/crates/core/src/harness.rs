//! Theorem verification sweeps and the counterexample search for the two
//! open max/sum four-vertex problems.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::conditions::{d_star, ConditionKind};
use crate::constructive::{
    find_path_t5, find_path_t8, find_paths_t10, validate_path_outcome, validate_t10_outcome, ConstructOptions,
    PathOutcome, T10Outcome,
};
use crate::format::{parse_graph, write_graph};
use crate::graph::{GraphError, Vertex, WeightedGraph};
use crate::instances::{enumerate_two_connected, random_two_connected_with, InstanceError};
use crate::oracle::{self, OracleBudget, OracleError};
use crate::rational::{int, serde_rational, ExtRational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
    ];

    /// Number of anchor vertices; the condition excludes exactly these.
    pub fn arity(self) -> usize {
        match self {
            TheoremId::T2 | TheoremId::T4 | TheoremId::T6 => 0,
            TheoremId::T7 | TheoremId::T8 => 1,
            _ => 2,
        }
    }

    pub fn condition(self) -> ConditionKind {
        match self {
            TheoremId::T1 | TheoremId::T2 => ConditionKind::DiracMin,
            TheoremId::T3 | TheoremId::T4 => ConditionKind::OrePairSum,
            TheoremId::T5 | TheoremId::T6 => ConditionKind::PairMax,
            TheoremId::T7 | TheoremId::T9 => ConditionKind::TripleSum,
            TheoremId::T8 | TheoremId::T10 => ConditionKind::TripleMax,
        }
    }

    /// Whether a constructive algorithm exists and is cross-checked.
    pub fn is_constructive(self) -> bool {
        matches!(self, TheoremId::T5 | TheoremId::T8 | TheoremId::T10)
    }

    pub fn is_cycle_theorem(self) -> bool {
        self.arity() == 0
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem id {0:?}; expected T1..T10")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.trim().trim_start_matches(['T', 't']);
        match digits.parse::<usize>() {
            Ok(k @ 1..=10) => Ok(TheoremId::ALL[k - 1]),
            _ => Err(UnknownTheorem(s.to_string())),
        }
    }
}

/// One disjunct of a theorem's conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Conclusion {
    HeavyXYPath,
    HamiltonXYPath,
    HeavyXPath,
    HamiltonXPath,
    HeavyCycle,
    HamiltonCycle,
    /// Every maximum-weight cycle is a Hamilton cycle.
    HeaviestCyclesHamilton,
    HeavyDisjointPair,
    SpanningDisjointPair,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("{theorem} takes {expected} anchor(s), got {got}")]
    Arity { theorem: TheoremId, expected: usize, got: usize },
    #[error("anchor {0} is not a vertex")]
    MissingVertex(Vertex),
    #[error("anchors must be distinct")]
    SameAnchors,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Short hex digest of the canonical graph text.
pub fn graph_id(g: &WeightedGraph) -> String {
    let digest = Sha256::digest(write_graph(g).as_bytes());
    hex::encode(&digest[..8])
}

/// The `d` used for a given `d*`: `d*` itself, or one more than the total
/// weight when the condition is vacuous, which no path or cycle can reach.
pub fn effective_d(g: &WeightedGraph, d_star: &ExtRational) -> Rational {
    match d_star {
        ExtRational::Finite(d) => d.clone(),
        ExtRational::PosInf => g.total_weight() + Rational::one(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub graph_id: String,
    /// Enough, with `anchors` and `theorem`, to reproduce the verdict.
    pub graph_text: String,
    pub anchors: Vec<Vertex>,
    pub theorem: TheoremId,
    pub d_star: ExtRational,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub d: Rational,
    /// Disjuncts the oracle found feasible, in statement order.
    pub feasible: Vec<Conclusion>,
    pub oracle: Option<Conclusion>,
    pub constructive: Option<Conclusion>,
    pub pass: bool,
    pub detail: Option<String>,
    pub micros: u64,
}

/// Checks one theorem on one graph at `d = d*`.
pub fn verify_instance(
    g: &WeightedGraph,
    anchors: &[Vertex],
    theorem: TheoremId,
    budget: &OracleBudget,
) -> Result<VerificationRecord, HarnessError> {
    let start = Instant::now();
    if anchors.len() != theorem.arity() {
        return Err(HarnessError::Arity { theorem, expected: theorem.arity(), got: anchors.len() });
    }
    if let Some(&v) = anchors.iter().find(|&&v| !g.contains(v)) {
        return Err(HarnessError::MissingVertex(v));
    }
    if anchors.len() == 2 && anchors[0] == anchors[1] {
        return Err(HarnessError::SameAnchors);
    }
    if !g.is_two_connected() {
        return Err(HarnessError::NotTwoConnected);
    }
    let report = d_star(g, theorem.condition(), anchors)?;
    let d = effective_d(g, &report.d_star);
    let feasible = feasible_disjuncts(g, anchors, theorem, &d, budget)?;
    let oracle = feasible.first().copied();
    let mut detail = None;
    let mut constructive = None;
    if theorem.is_constructive() {
        match construct(g, anchors, theorem, &d, budget) {
            Ok(c) => {
                if !feasible.contains(&c) {
                    detail = Some(format!("constructive disjunct {c} not confirmed by the oracle"));
                }
                constructive = Some(c);
            }
            Err(e) => detail = Some(format!("constructive run failed: {e}")),
        }
    }
    if oracle.is_none() && detail.is_none() {
        detail = Some("no disjunct of the conclusion holds".into());
    }
    Ok(VerificationRecord {
        graph_id: graph_id(g),
        graph_text: write_graph(g),
        anchors: anchors.to_vec(),
        theorem,
        d_star: report.d_star,
        d,
        pass: oracle.is_some() && detail.is_none(),
        feasible,
        oracle,
        constructive,
        detail,
        micros: start.elapsed().as_micros() as u64,
    })
}

fn feasible_disjuncts(
    g: &WeightedGraph,
    anchors: &[Vertex],
    theorem: TheoremId,
    d: &Rational,
    budget: &OracleBudget,
) -> Result<Vec<Conclusion>, OracleError> {
    let mut out = Vec::new();
    let mut push = |c: Conclusion, ok: bool| {
        if ok {
            out.push(c)
        }
    };
    match theorem {
        TheoremId::T1 | TheoremId::T3 | TheoremId::T5 => {
            let (x, y) = (anchors[0], anchors[1]);
            let best = oracle::heaviest_xy_path(g, x, y, budget)?;
            push(Conclusion::HeavyXYPath, best.map_or(false, |h| &h.weight >= d));
            if theorem != TheoremId::T1 {
                push(Conclusion::HamiltonXYPath, oracle::hamilton_xy_path(g, x, y, budget)?.is_some());
            }
        }
        TheoremId::T2 | TheoremId::T4 | TheoremId::T6 => {
            let target = d * int(2);
            let best = oracle::heaviest_cycle(g, budget)?;
            push(Conclusion::HeavyCycle, best.as_ref().map_or(false, |c| c.weight >= target));
            if theorem == TheoremId::T2 {
                let n = g.vertex_count();
                let all_hamilton = match &best {
                    Some(c) if c.vertices.len() == n => oracle::heaviest_cycle_within(g, n - 1, budget)?
                        .map_or(true, |shorter| shorter.weight < c.weight),
                    _ => false,
                };
                push(Conclusion::HeaviestCyclesHamilton, all_hamilton);
            } else {
                push(Conclusion::HamiltonCycle, oracle::hamilton_cycle(g, budget)?.is_some());
            }
        }
        TheoremId::T7 | TheoremId::T8 => {
            let x = anchors[0];
            push(Conclusion::HeavyXPath, &oracle::heaviest_x_path(g, x, budget)?.weight >= d);
            push(Conclusion::HamiltonXPath, oracle::hamilton_x_path(g, x, budget)?.is_some());
        }
        TheoremId::T9 | TheoremId::T10 => {
            let (x, y) = (anchors[0], anchors[1]);
            let best = oracle::heaviest_xy_path(g, x, y, budget)?;
            push(Conclusion::HeavyXYPath, best.map_or(false, |h| &h.weight >= d));
            push(Conclusion::HeavyDisjointPair, &oracle::best_disjoint_pair(g, x, y, budget)?.weight >= d);
            push(Conclusion::SpanningDisjointPair, oracle::spanning_disjoint_pair(g, x, y, budget)?.is_some());
        }
    }
    Ok(out)
}

/// Runs the constructive algorithm, validates its witness, and names the
/// disjunct it reached.
fn construct(
    g: &WeightedGraph,
    anchors: &[Vertex],
    theorem: TheoremId,
    d: &Rational,
    budget: &OracleBudget,
) -> Result<Conclusion, String> {
    let opts = ConstructOptions { budget: *budget, force: false };
    match theorem {
        TheoremId::T5 => {
            let (x, y) = (anchors[0], anchors[1]);
            let (o, _) = find_path_t5(g, x, y, d, &opts).map_err(|e| e.to_string())?;
            validate_path_outcome(g, x, Some(y), d, &o)?;
            Ok(match o {
                PathOutcome::HeavyPath(_) => Conclusion::HeavyXYPath,
                PathOutcome::HamiltonPath(_) => Conclusion::HamiltonXYPath,
            })
        }
        TheoremId::T8 => {
            let x = anchors[0];
            let (o, _) = find_path_t8(g, x, d, &opts).map_err(|e| e.to_string())?;
            validate_path_outcome(g, x, None, d, &o)?;
            Ok(match o {
                PathOutcome::HeavyPath(_) => Conclusion::HeavyXPath,
                PathOutcome::HamiltonPath(_) => Conclusion::HamiltonXPath,
            })
        }
        TheoremId::T10 => {
            let (x, y) = (anchors[0], anchors[1]);
            let (o, _) = find_paths_t10(g, x, y, d, &opts).map_err(|e| e.to_string())?;
            validate_t10_outcome(g, x, y, d, &o)?;
            Ok(match o {
                T10Outcome::HeavyXYPath(_) => Conclusion::HeavyXYPath,
                T10Outcome::HeavyDisjointPair(..) => Conclusion::HeavyDisjointPair,
                T10Outcome::SpanningDisjointPair(..) => Conclusion::SpanningDisjointPair,
            })
        }
        other => Err(format!("{other} has no constructive algorithm")),
    }
}

/// Every anchor tuple a sweep tries for `theorem`: none, each vertex, or
/// each unordered pair.
pub fn anchor_tuples(g: &WeightedGraph, theorem: TheoremId) -> Vec<Vec<Vertex>> {
    let vs: Vec<Vertex> = g.vertices().collect();
    match theorem.arity() {
        0 => vec![vec![]],
        1 => vs.iter().map(|&v| vec![v]).collect(),
        _ => vs.iter().enumerate().flat_map(|(i, &a)| vs[i + 1..].iter().map(move |&b| vec![a, b])).collect(),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub budget: OracleBudget,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { budget: OracleBudget::default(), jobs: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepError {
    pub index: usize,
    pub graph_text: String,
    pub anchors: Vec<Vertex>,
    pub theorem: Option<TheoremId>,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TheoremTally {
    pub runs: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_micros: u64,
    /// How often each disjunct was the oracle's first feasible one.
    pub by_conclusion: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub instances: usize,
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_theorem: BTreeMap<TheoremId, TheoremTally>,
    pub failures: Vec<VerificationRecord>,
    pub errors: Vec<SweepError>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.failed == 0 && self.errors.is_empty()
    }

    fn absorb(&mut self, rec: VerificationRecord) {
        self.records += 1;
        let tally = self.per_theorem.entry(rec.theorem).or_default();
        tally.runs += 1;
        tally.worst_micros = tally.worst_micros.max(rec.micros);
        if let Some(c) = rec.oracle {
            *tally.by_conclusion.entry(c.to_string()).or_default() += 1;
        }
        if rec.pass {
            self.passed += 1;
            tally.passed += 1;
        } else {
            self.failed += 1;
            tally.failed += 1;
            self.failures.push(rec);
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances {}  records {}  passed {}  failed {}  errors {}", self.instances, self.records, self.passed, self.failed, self.errors.len())?;
        writeln!(f, "{:<8}{:>10}{:>10}{:>10}{:>14}  conclusions", "theorem", "runs", "passed", "failed", "worst_us")?;
        for (t, tally) in &self.per_theorem {
            let by: Vec<String> = tally.by_conclusion.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(f, "{:<8}{:>10}{:>10}{:>10}{:>14}  {}", t.to_string(), tally.runs, tally.passed, tally.failed, tally.worst_micros, by.join(" "))?;
        }
        for rec in &self.failures {
            writeln!(f, "FAIL {} {} anchors {:?}: {}", rec.theorem, rec.graph_id, rec.anchors, rec.detail.as_deref().unwrap_or(""))?;
        }
        for e in &self.errors {
            writeln!(f, "ERROR instance {} {:?}: {}", e.index, e.theorem, e.message)?;
        }
        Ok(())
    }
}

const CHUNK: usize = 1024;

/// Runs every theorem in `theorems` over every instance and anchor tuple.
/// `on_record` sees records in instance order; errors are collected without
/// stopping the sweep.
pub fn sweep<I>(
    family: I,
    theorems: &[TheoremId],
    opts: &SweepOptions,
    mut on_record: impl FnMut(&VerificationRecord),
) -> SweepReport
where
    I: IntoIterator<Item = WeightedGraph>,
{
    let pool = opts.jobs.map(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool"));
    let mut report = SweepReport::default();
    let mut iter = family.into_iter().enumerate().peekable();
    while iter.peek().is_some() {
        let chunk: Vec<(usize, WeightedGraph)> = iter.by_ref().take(CHUNK).collect();
        let work = || chunk.par_iter().map(|(i, g)| check_graph(*i, g, theorems, &opts.budget)).collect::<Vec<_>>();
        let results = match &pool {
            Some(p) => p.install(work),
            None => work(),
        };
        for (records, errors) in results {
            report.instances += 1;
            for rec in records {
                on_record(&rec);
                report.absorb(rec);
            }
            report.errors.extend(errors);
        }
    }
    report
}

fn check_graph(
    index: usize,
    g: &WeightedGraph,
    theorems: &[TheoremId],
    budget: &OracleBudget,
) -> (Vec<VerificationRecord>, Vec<SweepError>) {
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let error = |anchors: Vec<Vertex>, theorem: Option<TheoremId>, message: String| SweepError {
        index,
        graph_text: write_graph(g),
        anchors,
        theorem,
        message,
    };
    if !g.is_two_connected() {
        errors.push(error(vec![], None, HarnessError::NotTwoConnected.to_string()));
        return (records, errors);
    }
    for &t in theorems {
        for anchors in anchor_tuples(g, t) {
            match verify_instance(g, &anchors, t, budget) {
                Ok(r) => records.push(r),
                Err(e) => errors.push(error(anchors, Some(t), e.to_string())),
            }
        }
    }
    (records, errors)
}

/// All 2-connected graphs on `n` labelled vertices for each `n` in `ns`,
/// with every assignment of weights from `weights`.
pub fn exhaustive_family(
    ns: impl IntoIterator<Item = usize>,
    weights: &[Rational],
) -> Result<impl Iterator<Item = WeightedGraph>, InstanceError> {
    let families = ns.into_iter().map(|n| enumerate_two_connected(n, weights)).collect::<Result<Vec<_>, _>>()?;
    Ok(families.into_iter().flatten())
}

/// `count` seeded random 2-connected graphs, `n` drawn uniformly from
/// `ns`, integer weights uniform in `[lo, hi]`.
pub fn random_family(
    ns: &[usize],
    lo: i64,
    hi: i64,
    count: usize,
    seed: u64,
) -> impl Iterator<Item = Result<WeightedGraph, InstanceError>> {
    let ns = ns.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| {
        let n = ns[rng.gen_range(0..ns.len())];
        random_two_connected_with(n, lo, hi, &mut rng)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Problem {
    /// Sum of weighted degrees over independent 4-sets.
    P1,
    /// Maximum weighted degree over independent 4-sets.
    P2,
}

impl Problem {
    pub fn condition(self) -> ConditionKind {
        match self {
            Problem::P1 => ConditionKind::QuadSum,
            Problem::P2 => ConditionKind::QuadMax,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Problem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P1" | "1" => Ok(Problem::P1),
            "P2" | "2" => Ok(Problem::P2),
            _ => Err(format!("unknown problem {s:?}; expected P1 or P2")),
        }
    }
}

/// A graph satisfying the problem's condition at `d` with neither a path of
/// weight `>= d` nor a Hamilton path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleCertificate {
    pub problem: Problem,
    pub graph_text: String,
    pub d_star: ExtRational,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub d: Rational,
    #[serde(serialize_with = "serde_rational::serialize")]
    pub heaviest_path_weight: Rational,
    pub heaviest_path: Vec<Vertex>,
}

/// Re-derives every claim of a certificate from its graph text alone.
pub fn verify_certificate(cert: &CounterexampleCertificate, budget: &OracleBudget) -> Result<(), String> {
    let g = parse_graph(&cert.graph_text).map_err(|e| e.to_string())?;
    if !g.is_two_connected() {
        return Err("graph is not 2-connected".into());
    }
    let report = d_star(&g, cert.problem.condition(), &[]).map_err(|e| e.to_string())?;
    if report.d_star != cert.d_star || effective_d(&g, &report.d_star) != cert.d {
        return Err(format!("d* recomputes to {}", report.d_star));
    }
    let best = oracle::heaviest_path(&g, budget).map_err(|e| e.to_string())?.ok_or("empty graph")?;
    if best.weight >= cert.d || best.weight != cert.heaviest_path_weight {
        return Err(format!("heaviest path weighs {}", best.weight));
    }
    if oracle::hamilton_path(&g, budget).map_err(|e| e.to_string())?.is_some() {
        return Err("graph has a Hamilton path".into());
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Sizes searched exhaustively; capped at 5 vertices.
    pub exhaustive_n: Vec<usize>,
    pub weights: Vec<Rational>,
    /// Sizes for the random phase.
    pub random_n: Vec<usize>,
    pub random_weights: (i64, i64),
    pub random_draws: usize,
    pub seed: u64,
    /// Stop after this many instances.
    pub max_instances: Option<usize>,
    pub budget: OracleBudget,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exhaustive_n: vec![3, 4, 5],
            weights: vec![int(1), int(2)],
            random_n: vec![6, 7],
            random_weights: (0, 10),
            random_draws: 0,
            seed: 0,
            max_instances: None,
            budget: OracleBudget::default(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchReport {
    pub examined: usize,
    /// Instances whose condition is vacuous.
    pub vacuous: usize,
    /// Instances with no Hamilton path, the only ones that need a heavy path.
    pub non_traceable: usize,
    pub budget_exhausted: bool,
    pub certificate: Option<CounterexampleCertificate>,
    pub errors: Vec<String>,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "examined {}  vacuous {}  without Hamilton path {}  errors {}",
            self.examined,
            self.vacuous,
            self.non_traceable,
            self.errors.len()
        )?;
        match &self.certificate {
            Some(c) => write!(f, "counterexample found (d = {}):\n{}", c.d, c.graph_text),
            None if self.budget_exhausted => write!(f, "none found within budget"),
            None => write!(f, "none found"),
        }
    }
}

/// Exhaustive search over small graphs, then seeded random draws, for a
/// graph meeting the problem's condition at its own `d*` without a heavy
/// path or a Hamilton path. Certificates are re-verified before reporting.
pub fn search_counterexample(problem: Problem, opts: &SearchOptions) -> Result<SearchReport, HarnessError> {
    let mut report = SearchReport::default();
    let small: Vec<usize> = opts.exhaustive_n.iter().copied().filter(|&n| n <= 5).collect();
    let exhaustive = exhaustive_family(small, &opts.weights)?.map(Ok);
    let (lo, hi) = opts.random_weights;
    let random = random_family(&opts.random_n, lo, hi, opts.random_draws, opts.seed);
    for g in exhaustive.chain(random) {
        if opts.max_instances.map_or(false, |m| report.examined >= m) {
            report.budget_exhausted = true;
            break;
        }
        report.examined += 1;
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                report.errors.push(e.to_string());
                continue;
            }
        };
        match check_problem(problem, &g, &opts.budget, &mut report) {
            Ok(Some(cert)) => match verify_certificate(&cert, &opts.budget) {
                Ok(()) => {
                    report.certificate = Some(cert);
                    break;
                }
                Err(e) => report.errors.push(format!("certificate did not re-verify: {e}")),
            },
            Ok(None) => {}
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    Ok(report)
}

fn check_problem(
    problem: Problem,
    g: &WeightedGraph,
    budget: &OracleBudget,
    report: &mut SearchReport,
) -> Result<Option<CounterexampleCertificate>, HarnessError> {
    let r = d_star(g, problem.condition(), &[])?;
    if !r.d_star.is_finite() {
        report.vacuous += 1;
    }
    if oracle::hamilton_path(g, budget)?.is_some() {
        return Ok(None);
    }
    report.non_traceable += 1;
    let d = effective_d(g, &r.d_star);
    let best = oracle::heaviest_path(g, budget)?.expect("non-empty graph");
    if best.weight >= d {
        return Ok(None);
    }
    Ok(Some(CounterexampleCertificate {
        problem,
        graph_text: write_graph(g),
        d_star: r.d_star,
        d,
        heaviest_path_weight: best.weight,
        heaviest_path: best.path.into_vertices(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{fig1, three_cliques, two_cliques};

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("t10".parse::<TheoremId>().unwrap(), TheoremId::T10);
        assert_eq!("5".parse::<TheoremId>().unwrap(), TheoremId::T5);
        assert!("T11".parse::<TheoremId>().is_err());
    }

    #[test]
    fn fig1_t5_passes() {
        let f = fig1();
        let r = verify_instance(&f.graph, &[f.x, f.y], TheoremId::T5, &OracleBudget::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.d, int(2));
        assert_eq!(r.oracle, Some(Conclusion::HeavyXYPath));
    }

    #[test]
    fn two_cliques_t9_uses_spanning_pair() {
        let f = two_cliques(4, 4).unwrap();
        let r = verify_instance(&f.graph, &[f.x, f.y], TheoremId::T9, &OracleBudget::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.oracle, Some(Conclusion::SpanningDisjointPair));
    }

    #[test]
    fn triangle_t2_heaviest_cycles_hamilton() {
        let g = WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(1))]).unwrap();
        let r = verify_instance(&g, &[], TheoremId::T2, &OracleBudget::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.oracle, Some(Conclusion::HeaviestCyclesHamilton));
    }

    #[test]
    fn sweep_isolates_bad_instances() {
        let path = WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1))]).unwrap();
        let tri = WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1)), (0, 2, int(1))]).unwrap();
        let report = sweep(vec![path, tri], &TheoremId::ALL, &SweepOptions::default(), |_| {});
        assert_eq!(report.instances, 2);
        assert_eq!(report.errors.len(), 1);
        assert_eq!(report.failed, 0);
        assert!(report.records > 0);
        let empty = sweep(Vec::new(), &TheoremId::ALL, &SweepOptions::default(), |_| {});
        assert_eq!(empty.instances, 0);
        assert_eq!(empty.records, 0);
    }

    #[test]
    fn three_cliques_have_hamilton_path() {
        // the four-vertex conditions are vacuous here, but a Hamilton path exists
        let f = three_cliques(3, 3, 3).unwrap();
        let mut report = SearchReport::default();
        let out = check_problem(Problem::P1, &f.graph, &OracleBudget::default(), &mut report).unwrap();
        assert!(out.is_none());
        assert_eq!(report.vacuous, 1);
    }

    #[test]
    fn random_phase_is_deterministic() {
        let a: Vec<String> = random_family(&[6, 7], 0, 10, 5, 9).map(|g| write_graph(&g.unwrap())).collect();
        let b: Vec<String> = random_family(&[6, 7], 0, 10, 5, 9).map(|g| write_graph(&g.unwrap())).collect();
        assert_eq!(a, b);
    }
}
