//! Weighted-degree hypotheses and their largest satisfiable threshold `d*`.
//!
//! Every kind quantifies over tuples of vertices outside an excluded set and
//! asks an aggregate of their weighted degrees to reach `d`. Sum aggregates
//! are divided by the tuple size so all kinds live on the same scale.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{GraphError, Vertex, WeightedGraph};
use crate::rational::{int, ExtRational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConditionKind {
    DiracMin,
    OrePairSum,
    PairMax,
    TripleSum,
    TripleMax,
    QuadSum,
    QuadMax,
    PairMaxDist2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregate {
    Single,
    Mean,
    Max,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 8] = [
        ConditionKind::DiracMin,
        ConditionKind::OrePairSum,
        ConditionKind::PairMax,
        ConditionKind::TripleSum,
        ConditionKind::TripleMax,
        ConditionKind::QuadSum,
        ConditionKind::QuadMax,
        ConditionKind::PairMaxDist2,
    ];

    pub fn arity(self) -> usize {
        match self {
            ConditionKind::DiracMin => 1,
            ConditionKind::OrePairSum | ConditionKind::PairMax | ConditionKind::PairMaxDist2 => 2,
            ConditionKind::TripleSum | ConditionKind::TripleMax => 3,
            ConditionKind::QuadSum | ConditionKind::QuadMax => 4,
        }
    }

    pub fn aggregate(self) -> Aggregate {
        match self {
            ConditionKind::DiracMin => Aggregate::Single,
            ConditionKind::OrePairSum | ConditionKind::TripleSum | ConditionKind::QuadSum => Aggregate::Mean,
            _ => Aggregate::Max,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConditionKind::DiracMin => "DiracMin",
            ConditionKind::OrePairSum => "OrePairSum",
            ConditionKind::PairMax => "PairMax",
            ConditionKind::TripleSum => "TripleSum",
            ConditionKind::TripleMax => "TripleMax",
            ConditionKind::QuadSum => "QuadSum",
            ConditionKind::QuadMax => "QuadMax",
            ConditionKind::PairMaxDist2 => "PairMaxDist2",
        }
    }

    /// Aggregated value of `degrees` under this kind.
    pub fn combine(self, degrees: &[Rational]) -> Rational {
        match self.aggregate() {
            Aggregate::Single => degrees[0].clone(),
            Aggregate::Mean => {
                let total: Rational = degrees.iter().sum();
                total / int(degrees.len() as i64)
            }
            Aggregate::Max => degrees.iter().max().cloned().unwrap_or_else(|| int(0)),
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConditionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown condition `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub kind: ConditionKind,
    pub excluded: Vec<Vertex>,
    pub d_star: ExtRational,
    /// The lexicographically first tuple attaining `d_star`.
    pub witness_tuple: Option<Vec<Vertex>>,
}

impl ConditionReport {
    pub fn holds(&self, d: &Rational) -> bool {
        self.d_star.admits(d)
    }
}

fn qualifies(g: &WeightedGraph, kind: ConditionKind, tuple: &[Vertex]) -> Result<bool, GraphError> {
    if kind == ConditionKind::PairMaxDist2 {
        return Ok(g.unweighted_distance(tuple[0], tuple[1])? == Some(2));
    }
    for (i, &a) in tuple.iter().enumerate() {
        if tuple[i + 1..].iter().any(|&b| g.has_edge(a, b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Calls `visit` on every increasing `k`-subset of `pool` whose members are
/// pairwise nonadjacent (the adjacency filter is skipped when `filter` is false).
fn for_each_tuple(
    g: &WeightedGraph,
    pool: &[Vertex],
    k: usize,
    filter: bool,
    visit: &mut dyn FnMut(&[Vertex]) -> Result<(), GraphError>,
) -> Result<(), GraphError> {
    fn rec(
        g: &WeightedGraph,
        pool: &[Vertex],
        k: usize,
        filter: bool,
        from: usize,
        acc: &mut Vec<Vertex>,
        visit: &mut dyn FnMut(&[Vertex]) -> Result<(), GraphError>,
    ) -> Result<(), GraphError> {
        if acc.len() == k {
            return visit(acc);
        }
        for i in from..pool.len() {
            let v = pool[i];
            if filter && acc.iter().any(|&a| g.has_edge(a, v)) {
                continue;
            }
            acc.push(v);
            rec(g, pool, k, filter, i + 1, acc, visit)?;
            acc.pop();
        }
        Ok(())
    }
    rec(g, pool, k, filter, 0, &mut Vec::with_capacity(k), visit)
}

/// Largest `d` for which the hypothesis of `kind` holds, with the excluded
/// vertices left out of every tuple.
pub fn d_star(g: &WeightedGraph, kind: ConditionKind, excluded: &[Vertex]) -> Result<ConditionReport, GraphError> {
    for &v in excluded {
        if !g.contains(v) {
            return Err(GraphError::MissingVertex(v));
        }
    }
    let pool: Vec<Vertex> = g.vertices().filter(|v| !excluded.contains(v)).collect();
    let degrees: Vec<Rational> = (0..g.capacity())
        .map(|v| if g.contains(v) { g.weighted_degree(v, None).unwrap() } else { int(0) })
        .collect();
    let mut best: Option<(Rational, Vec<Vertex>)> = None;
    let distance_kind = kind == ConditionKind::PairMaxDist2;
    for_each_tuple(g, &pool, kind.arity(), !distance_kind, &mut |tuple| {
        if distance_kind && !qualifies(g, kind, tuple)? {
            return Ok(());
        }
        let vals: Vec<Rational> = tuple.iter().map(|&v| degrees[v].clone()).collect();
        let value = kind.combine(&vals);
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, tuple.to_vec()));
        }
        Ok(())
    })?;
    let mut excluded = excluded.to_vec();
    excluded.sort_unstable();
    excluded.dedup();
    Ok(match best {
        Some((value, tuple)) => ConditionReport {
            kind,
            excluded,
            d_star: ExtRational::Finite(value),
            witness_tuple: Some(tuple),
        },
        None => ConditionReport { kind, excluded, d_star: ExtRational::PosInf, witness_tuple: None },
    })
}

pub fn hypothesis_holds(
    g: &WeightedGraph,
    kind: ConditionKind,
    excluded: &[Vertex],
    d: &Rational,
) -> Result<bool, GraphError> {
    Ok(d_star(g, kind, excluded)?.holds(d))
}

/// Re-evaluates the aggregate on a witness tuple, checking that it qualifies.
pub fn evaluate_tuple(g: &WeightedGraph, kind: ConditionKind, tuple: &[Vertex]) -> Result<Option<Rational>, GraphError> {
    if tuple.len() != kind.arity() {
        return Ok(None);
    }
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != tuple.len() || !qualifies(g, kind, tuple)? {
        return Ok(None);
    }
    let vals = tuple.iter().map(|&v| g.weighted_degree(v, None)).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(kind.combine(&vals)))
}

/// The chain of pairwise comparisons that must hold between the `d*` values
/// of one graph and excluded set.
pub const LATTICE: [(ConditionKind, ConditionKind); 9] = [
    (ConditionKind::DiracMin, ConditionKind::OrePairSum),
    (ConditionKind::OrePairSum, ConditionKind::PairMax),
    (ConditionKind::PairMax, ConditionKind::TripleMax),
    (ConditionKind::OrePairSum, ConditionKind::TripleSum),
    (ConditionKind::TripleSum, ConditionKind::TripleMax),
    (ConditionKind::TripleMax, ConditionKind::QuadMax),
    (ConditionKind::TripleSum, ConditionKind::QuadSum),
    (ConditionKind::PairMax, ConditionKind::QuadMax),
    (ConditionKind::OrePairSum, ConditionKind::QuadSum),
];

/// Every lattice comparison that fails, as `(lower, upper)` pairs.
pub fn lattice_violations(
    g: &WeightedGraph,
    excluded: &[Vertex],
) -> Result<Vec<(ConditionKind, ConditionKind)>, GraphError> {
    let mut values = std::collections::HashMap::new();
    for kind in ConditionKind::ALL {
        if kind != ConditionKind::PairMaxDist2 {
            values.insert(kind, d_star(g, kind, excluded)?.d_star);
        }
    }
    Ok(LATTICE.iter().copied().filter(|(lo, hi)| values[lo] > values[hi]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn path3() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(3))]).unwrap()
    }

    #[test]
    fn pairs_and_singletons() {
        let g = path3();
        let dirac = d_star(&g, ConditionKind::DiracMin, &[]).unwrap();
        assert_eq!(dirac.d_star, ExtRational::Finite(int(1)));
        assert_eq!(dirac.witness_tuple, Some(vec![0]));
        let ore = d_star(&g, ConditionKind::OrePairSum, &[]).unwrap();
        assert_eq!(ore.d_star, ExtRational::Finite(int(2)));
        assert_eq!(d_star(&g, ConditionKind::PairMax, &[]).unwrap().d_star, ExtRational::Finite(int(3)));
        assert_eq!(d_star(&g, ConditionKind::PairMax, &[2]).unwrap().d_star, ExtRational::PosInf);
        assert_eq!(d_star(&g, ConditionKind::PairMaxDist2, &[]).unwrap().witness_tuple, Some(vec![0, 2]));
    }

    #[test]
    fn complete_graphs_are_vacuous() {
        let mut g = WeightedGraph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v, ratio(1, 3)).unwrap();
            }
        }
        for kind in ConditionKind::ALL {
            let r = d_star(&g, kind, &[]).unwrap();
            assert_eq!(r.d_star.is_finite(), kind == ConditionKind::DiracMin, "{kind}");
        }
    }

    #[test]
    fn witness_reevaluates() {
        let g = path3();
        for kind in ConditionKind::ALL {
            let r = d_star(&g, kind, &[]).unwrap();
            if let Some(t) = &r.witness_tuple {
                assert_eq!(evaluate_tuple(&g, kind, t).unwrap().as_ref(), r.d_star.finite());
            }
        }
        assert!(evaluate_tuple(&g, ConditionKind::PairMax, &[0, 1]).unwrap().is_none());
        assert!(d_star(&g, ConditionKind::PairMax, &[9]).is_err());
    }

    #[test]
    fn kinds_parse_by_name() {
        assert_eq!("triplemax".parse::<ConditionKind>().unwrap(), ConditionKind::TripleMax);
        assert!("nope".parse::<ConditionKind>().is_err());
    }
}
