//! Named fixtures plus exhaustive and seeded random families of 2-connected
//! weighted graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::conditions::{d_star, ConditionKind};
use crate::graph::{Vertex, WeightedGraph};
use crate::oracle::{self, OracleBudget};
use crate::rational::{format_rational, int, ExtRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("every complete part needs at least 3 vertices, got {0}")]
    PartTooSmall(usize),
    #[error("exhaustive enumeration supports 3 <= n <= 7, got {0}")]
    SizeOutOfRange(usize),
    #[error("weight set is empty")]
    EmptyWeights,
    #[error("negative weight {0} in weight set")]
    NegativeWeight(String),
    #[error("family would hold {count} weighted graphs, above the cap of {cap}")]
    TooMany { count: u128, cap: u128 },
    #[error("weight range {0}..={1} is empty or negative")]
    BadRange(i64, i64),
    #[error("no 2-connected graph on {n} vertices after {attempts} draws")]
    RetriesExhausted { n: usize, attempts: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// One property a fixture is expected to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Expectation {
    TwoConnected,
    DStar { kind: ConditionKind, excluded: Vec<Vertex>, value: ExtRational },
    #[serde(serialize_with = "crate::rational::serde_rational::serialize")]
    HeaviestXyPath(Rational),
    #[serde(serialize_with = "crate::rational::serde_rational::serialize")]
    HeaviestXPath(Rational),
    NoHamiltonXyPath,
    NoHamiltonXPath,
    SpanningPairExists,
}

impl std::fmt::Display for Expectation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expectation::TwoConnected => write!(f, "2-connected"),
            Expectation::DStar { kind, excluded, value } => write!(f, "d*({}, {excluded:?}) = {value}", kind.name()),
            Expectation::HeaviestXyPath(w) => write!(f, "heaviest (x,y)-path = {}", format_rational(w)),
            Expectation::HeaviestXPath(w) => write!(f, "heaviest x-path = {}", format_rational(w)),
            Expectation::NoHamiltonXyPath => write!(f, "no Hamilton (x,y)-path"),
            Expectation::NoHamiltonXPath => write!(f, "no Hamilton x-path"),
            Expectation::SpanningPairExists => write!(f, "spanning disjoint pair exists"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectationResult {
    pub expectation: Expectation,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub graph: WeightedGraph,
    pub x: Vertex,
    pub y: Vertex,
    pub expected: Vec<Expectation>,
}

impl Fixture {
    /// Evaluates every expected property with the exact oracles.
    pub fn check(&self, budget: &OracleBudget) -> Result<Vec<ExpectationResult>, oracle::OracleError> {
        let g = &self.graph;
        let mut out = Vec::new();
        for e in &self.expected {
            let (observed, pass) = match e {
                Expectation::TwoConnected => {
                    let ok = g.is_two_connected();
                    (ok.to_string(), ok)
                }
                Expectation::DStar { kind, excluded, value } => {
                    let r = d_star(g, *kind, excluded).expect("fixture anchors exist");
                    (r.d_star.to_string(), &r.d_star == value)
                }
                Expectation::HeaviestXyPath(w) => {
                    let best = oracle::heaviest_xy_path(g, self.x, self.y, budget)?;
                    let got = best.map(|b| b.weight);
                    (got.as_ref().map_or("none".into(), |r| r.to_string()), got.as_ref() == Some(w))
                }
                Expectation::HeaviestXPath(w) => {
                    let best = oracle::heaviest_x_path(g, self.x, budget)?;
                    (best.weight.to_string(), &best.weight == w)
                }
                Expectation::NoHamiltonXyPath => {
                    let p = oracle::hamilton_xy_path(g, self.x, self.y, budget)?;
                    (p.as_ref().map_or("none".into(), |p| p.to_string()), p.is_none())
                }
                Expectation::NoHamiltonXPath => {
                    let p = oracle::hamilton_x_path(g, self.x, budget)?;
                    (p.as_ref().map_or("none".into(), |p| p.to_string()), p.is_none())
                }
                Expectation::SpanningPairExists => {
                    let p = oracle::spanning_disjoint_pair(g, self.x, self.y, budget)?;
                    let text = p.as_ref().map_or("none".into(), |(a, b)| format!("{a} | {b}"));
                    (text, p.is_some())
                }
            };
            out.push(ExpectationResult { expectation: e.clone(), observed, pass });
        }
        Ok(out)
    }
}

/// Six vertices `x=0, y=1, u1..u4 = 2..5`; weight 2 on `u2u3`, 1 elsewhere.
pub fn fig1() -> Fixture {
    let (x, y, u1, u2, u3, u4) = (0, 1, 2, 3, 4, 5);
    let edges = [
        (x, u1, 1),
        (y, u1, 1),
        (x, u2, 1),
        (x, u3, 1),
        (y, u2, 1),
        (y, u3, 1),
        (u2, u4, 1),
        (u3, u4, 1),
        (u2, u3, 2),
    ];
    let graph = WeightedGraph::from_edges(6, edges.map(|(a, b, w)| (a, b, int(w)))).unwrap();
    Fixture {
        name: "fig1".into(),
        graph,
        x,
        y,
        expected: vec![
            Expectation::TwoConnected,
            Expectation::DStar {
                kind: ConditionKind::PairMaxDist2,
                excluded: vec![x, y],
                value: ExtRational::Finite(int(5)),
            },
            Expectation::HeaviestXyPath(int(4)),
            Expectation::NoHamiltonXyPath,
        ],
    }
}

/// Complete graphs sharing `x = 0` and `y = 1`; `sizes` count `x` and `y`.
pub fn shared_cliques(sizes: &[usize]) -> Result<WeightedGraph, InstanceError> {
    if let Some(&bad) = sizes.iter().find(|&&s| s < 3) {
        return Err(InstanceError::PartTooSmall(bad));
    }
    let n = 2 + sizes.iter().map(|s| s - 2).sum::<usize>();
    let mut g = WeightedGraph::new(n);
    g.add_edge(0, 1, int(0)).unwrap();
    let mut next = 2;
    for &s in sizes {
        let part: Vec<Vertex> = [0, 1].into_iter().chain(next..next + s - 2).collect();
        next += s - 2;
        for (i, &a) in part.iter().enumerate() {
            for &b in &part[i + 1..] {
                g.add_edge_if_absent(a, b, int(0), false).unwrap();
            }
        }
    }
    Ok(g)
}

pub fn two_cliques(p: usize, q: usize) -> Result<Fixture, InstanceError> {
    let graph = shared_cliques(&[p, q])?;
    Ok(Fixture {
        name: format!("fs2({p},{q})"),
        graph,
        x: 0,
        y: 1,
        expected: vec![
            Expectation::TwoConnected,
            Expectation::DStar { kind: ConditionKind::TripleSum, excluded: vec![0, 1], value: ExtRational::PosInf },
            Expectation::HeaviestXyPath(int(0)),
            Expectation::NoHamiltonXyPath,
            Expectation::SpanningPairExists,
        ],
    })
}

pub fn three_cliques(p: usize, q: usize, r: usize) -> Result<Fixture, InstanceError> {
    let graph = shared_cliques(&[p, q, r])?;
    Ok(Fixture {
        name: format!("fs3({p},{q},{r})"),
        graph,
        x: 0,
        y: 1,
        expected: vec![
            Expectation::TwoConnected,
            Expectation::DStar { kind: ConditionKind::QuadSum, excluded: vec![0], value: ExtRational::PosInf },
            Expectation::HeaviestXPath(int(0)),
            Expectation::NoHamiltonXPath,
        ],
    })
}

/// Looks up `fig1`, `fs2` (4,4), `fs3` (3,3,3), or `fs2:p,q` / `fs3:p,q,r`.
pub fn fixture_by_name(name: &str) -> Result<Fixture, InstanceError> {
    let unknown = || InstanceError::UnknownFixture(name.to_string());
    let (base, args) = match name.split_once(':') {
        Some((b, a)) => {
            let parsed: Result<Vec<usize>, _> = a.split(',').map(|s| s.trim().parse()).collect();
            (b, Some(parsed.map_err(|_| unknown())?))
        }
        None => (name, None),
    };
    match (base, args.as_deref()) {
        ("fig1", None) => Ok(fig1()),
        ("fs2", None) => two_cliques(4, 4),
        ("fs2", Some(&[p, q])) => two_cliques(p, q),
        ("fs3", None) => three_cliques(3, 3, 3),
        ("fs3", Some(&[p, q, r])) => three_cliques(p, q, r),
        _ => Err(unknown()),
    }
}

pub const DEFAULT_FAMILY_CAP: u128 = 10_000_000;

fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn two_connected_mask(n: usize, pairs: &[(Vertex, Vertex)], mask: u64) -> bool {
    let mut adj = vec![0u32; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let all = (1u32 << n) - 1;
    let reach = |skip: Option<usize>| {
        let within = all & !skip.map_or(0, |s| 1 << s);
        let start = within.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[i] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == within
    };
    n >= 3 && reach(None) && (0..n).all(|v| reach(Some(v)))
}

/// Edge lists of every labeled 2-connected graph on `0..n`, in increasing
/// order of the edge bitmask over pairs `(0,1), (0,2), ...`.
pub fn two_connected_skeletons(n: usize) -> Result<Vec<Vec<(Vertex, Vertex)>>, InstanceError> {
    if !(3..=7).contains(&n) {
        return Err(InstanceError::SizeOutOfRange(n));
    }
    let ps = pairs(n);
    Ok((0u64..1 << ps.len())
        .filter(|&m| two_connected_mask(n, &ps, m))
        .map(|m| ps.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect())
}

/// Every weighting of every labeled 2-connected graph on `n` vertices.
#[derive(Debug, Clone)]
pub struct Family {
    n: usize,
    weights: Vec<Rational>,
    skeletons: Vec<Vec<(Vertex, Vertex)>>,
    skeleton: usize,
    odometer: Vec<usize>,
    len: u128,
}

impl Family {
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl Iterator for Family {
    type Item = WeightedGraph;

    fn next(&mut self) -> Option<WeightedGraph> {
        let edges = self.skeletons.get(self.skeleton)?;
        let mut g = WeightedGraph::new(self.n);
        for (&(u, v), &k) in edges.iter().zip(&self.odometer) {
            g.add_edge(u, v, self.weights[k].clone()).unwrap();
        }
        // last edge varies fastest
        let mut i = self.odometer.len();
        loop {
            if i == 0 {
                self.skeleton += 1;
                let m = self.skeletons.get(self.skeleton).map_or(0, |s| s.len());
                self.odometer = vec![0; m];
                break;
            }
            i -= 1;
            self.odometer[i] += 1;
            if self.odometer[i] < self.weights.len() {
                break;
            }
            self.odometer[i] = 0;
        }
        Some(g)
    }
}

pub fn enumerate_two_connected(n: usize, weights: &[Rational]) -> Result<Family, InstanceError> {
    enumerate_two_connected_capped(n, weights, DEFAULT_FAMILY_CAP)
}

pub fn enumerate_two_connected_capped(n: usize, weights: &[Rational], cap: u128) -> Result<Family, InstanceError> {
    if weights.is_empty() {
        return Err(InstanceError::EmptyWeights);
    }
    if let Some(w) = weights.iter().find(|w| crate::rational::is_negative(w)) {
        return Err(InstanceError::NegativeWeight(w.to_string()));
    }
    if !(3..=7).contains(&n) {
        return Err(InstanceError::SizeOutOfRange(n));
    }
    let k = weights.len() as u128;
    let skeletons = two_connected_skeletons(n)?;
    let mut count: u128 = 0;
    for s in &skeletons {
        count = count.saturating_add(k.saturating_pow(s.len() as u32));
    }
    if count > cap {
        return Err(InstanceError::TooMany { count, cap });
    }
    let first = skeletons.first().map_or(0, |s| s.len());
    Ok(Family {
        n,
        weights: weights.to_vec(),
        skeletons,
        skeleton: 0,
        odometer: vec![0; first],
        len: count,
    })
}

const EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.7];
const MAX_DRAWS: usize = 10_000;

/// Seeded generate-and-test draw of a 2-connected graph with integer weights
/// uniform in `lo..=hi`.
pub fn random_two_connected(n: usize, lo: i64, hi: i64, seed: u64) -> Result<WeightedGraph, InstanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_two_connected_with(n, lo, hi, &mut rng)
}

pub fn random_two_connected_with(
    n: usize,
    lo: i64,
    hi: i64,
    rng: &mut ChaCha8Rng,
) -> Result<WeightedGraph, InstanceError> {
    if lo < 0 || hi < lo {
        return Err(InstanceError::BadRange(lo, hi));
    }
    if !(3..=32).contains(&n) {
        return Err(InstanceError::SizeOutOfRange(n));
    }
    let ps = pairs(n);
    for attempt in 0..MAX_DRAWS {
        let p = EDGE_PROBABILITIES[attempt % EDGE_PROBABILITIES.len()];
        let chosen: Vec<(Vertex, Vertex)> = ps.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let mut g = WeightedGraph::new(n);
        for &(u, v) in &chosen {
            g.add_edge(u, v, int(0)).unwrap();
        }
        if !g.is_two_connected() {
            continue;
        }
        let mut weighted = WeightedGraph::new(n);
        for (u, v) in chosen {
            weighted.add_edge(u, v, int(rng.gen_range(lo..=hi))).unwrap();
        }
        return Ok(weighted);
    }
    Err(InstanceError::RetriesExhausted { n, attempts: MAX_DRAWS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass_their_checks() {
        let b = OracleBudget::default();
        for f in [fig1(), two_cliques(4, 4).unwrap(), three_cliques(3, 3, 3).unwrap()] {
            for r in f.check(&b).unwrap() {
                assert!(r.pass, "{}: {:?} observed {}", f.name, r.expectation, r.observed);
            }
        }
    }

    #[test]
    fn clique_sizes_are_validated() {
        assert_eq!(two_cliques(2, 4).unwrap_err(), InstanceError::PartTooSmall(2));
        assert_eq!(three_cliques(3, 3, 3).unwrap().graph.vertex_count(), 5);
        assert_eq!(fixture_by_name("fs2:3,5").unwrap().graph.vertex_count(), 6);
        assert!(fixture_by_name("fs9").is_err());
    }

    #[test]
    fn small_family_sizes() {
        assert_eq!(enumerate_two_connected(3, &[int(1)]).unwrap().count(), 1);
        assert_eq!(enumerate_two_connected(3, &[int(0), int(1)]).unwrap().count(), 8);
        assert_eq!(enumerate_two_connected(4, &[int(1)]).unwrap().count(), 10);
        let fam = enumerate_two_connected(4, &[int(1), int(2)]).unwrap();
        assert_eq!(fam.len(), 304);
        assert_eq!(fam.count(), 304);
        assert!(matches!(
            enumerate_two_connected_capped(5, &[int(1), int(2)], 1000),
            Err(InstanceError::TooMany { .. })
        ));
        assert_eq!(enumerate_two_connected(8, &[int(1)]).unwrap_err(), InstanceError::SizeOutOfRange(8));
    }

    #[test]
    fn random_draws_are_deterministic() {
        let a = random_two_connected(6, 0, 10, 1).unwrap();
        assert_eq!(a, random_two_connected(6, 0, 10, 1).unwrap());
        assert!(a.is_two_connected());
        assert_eq!(random_two_connected(3, 0, 10, 5).unwrap().edge_count(), 3);
    }
}
