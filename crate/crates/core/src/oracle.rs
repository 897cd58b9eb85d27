//! Exact exhaustive searches deciding every conclusion form: heaviest paths
//! and cycles, Hamilton paths and cycles, and disjoint `x`-path / `y`-path pairs.
//!
//! Weights are moved onto a common denominator so the inner loops add plain
//! integers; results are converted back to exact rationals. Every search is a
//! depth-first enumeration in increasing vertex order with branch-and-bound
//! pruning, so among equal-weight optima the lexicographically smallest vertex
//! sequence is returned.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::{Path, Vertex, WeightedGraph};
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub node_limit: Option<u64>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 12, node_limit: None }
    }
}

impl OracleBudget {
    pub fn with_node_limit(limit: u64) -> Self {
        OracleBudget { node_limit: Some(limit), ..Self::default() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exceeded: graph has {vertices} vertices, limit is {limit}")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error("budget exceeded: search visited more than {limit} nodes")]
    NodeLimit { limit: u64 },
    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),
    #[error("anchors must be distinct, got {0} twice")]
    SameAnchors(Vertex),
    #[error("weights too large for exact search")]
    WeightOverflow,
}

impl OracleError {
    pub fn is_budget(&self) -> bool {
        matches!(self, OracleError::TooManyVertices { .. } | OracleError::NodeLimit { .. })
    }
}

/// A maximum-weight path together with its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heaviest {
    pub weight: Rational,
    pub path: Path,
}

/// A cycle listed from its smallest vertex, oriented so the second vertex is
/// smaller than the last; `weight` includes the closing edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub weight: Rational,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPair {
    pub weight: Rational,
    pub first: Path,
    pub second: Path,
}

/// Graph relabelled onto `0..n` with integer weights.
pub(crate) struct Compact {
    pub ids: Vec<Vertex>,
    local: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
    pub adj_mask: Vec<u64>,
    w: Vec<i128>,
    max_in: Vec<i128>,
    scale: BigInt,
}

impl Compact {
    pub fn new(g: &WeightedGraph, budget: &OracleBudget) -> Result<Compact, OracleError> {
        let ids: Vec<Vertex> = g.vertices().collect();
        let n = ids.len();
        if n > budget.max_vertices || n > 64 {
            return Err(OracleError::TooManyVertices { vertices: n, limit: budget.max_vertices.min(64) });
        }
        let mut local = vec![usize::MAX; g.capacity()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let scale = common_denominator(g.edges().map(|(_, _, w)| w));
        let cap = i128::MAX / (n as i128 + 2);
        let mut w = vec![0i128; n * n];
        let mut adj = vec![Vec::new(); n];
        let mut adj_mask = vec![0u64; n];
        let mut max_in = vec![0i128; n];
        for (a, b, weight) in g.edges() {
            let scaled = weight.numer() * (&scale / weight.denom());
            let value = scaled.to_i128().filter(|v| *v <= cap).ok_or(OracleError::WeightOverflow)?;
            let (i, j) = (local[a], local[b]);
            w[i * n + j] = value;
            w[j * n + i] = value;
            adj[i].push(j);
            adj[j].push(i);
            adj_mask[i] |= 1 << j;
            adj_mask[j] |= 1 << i;
            max_in[i] = max_in[i].max(value);
            max_in[j] = max_in[j].max(value);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Compact { ids, local, adj, adj_mask, w, max_in, scale })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn full(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn index(&self, v: Vertex) -> Result<usize, OracleError> {
        match self.local.get(v) {
            Some(&i) if i != usize::MAX => Ok(i),
            _ => Err(OracleError::MissingVertex(v)),
        }
    }

    pub fn weight(&self, i: usize, j: usize) -> i128 {
        self.w[i * self.n() + j]
    }

    pub fn to_rational(&self, scaled: i128) -> Rational {
        Rational::new(BigInt::from(scaled), self.scale.clone())
    }

    pub fn to_ids(&self, seq: &[usize]) -> Vec<Vertex> {
        seq.iter().map(|&i| self.ids[i]).collect()
    }

    fn bound(&self, mask: u64) -> i128 {
        let mut total = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            total += self.max_in[i];
            m &= m - 1;
        }
        total
    }

    /// Vertices of `within` reachable from `from` using only vertices of `within`.
    fn reach(&self, from: usize, within: u64) -> u64 {
        let mut seen = 1u64 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj_mask[i] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }
}

pub(crate) struct Counter {
    nodes: u64,
    limit: Option<u64>,
}

impl Counter {
    pub fn new(budget: &OracleBudget) -> Self {
        Counter { nodes: 0, limit: budget.node_limit }
    }

    pub fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        match self.limit {
            Some(limit) if self.nodes > limit => Err(OracleError::NodeLimit { limit }),
            _ => Ok(()),
        }
    }
}

/// Best path from a fixed start inside `allowed`, ending at `target` when given.
struct PathSearch<'a> {
    c: &'a Compact,
    target: Option<usize>,
    allowed: u64,
    /// An outside incumbent: only strictly heavier paths count.
    floor: Option<i128>,
    stack: Vec<usize>,
    best: Option<(i128, Vec<usize>)>,
}

impl<'a> PathSearch<'a> {
    fn new(c: &'a Compact, target: Option<usize>, allowed: u64, floor: Option<i128>) -> Self {
        PathSearch { c, target, allowed, floor, stack: Vec::new(), best: None }
    }

    fn threshold(&self) -> Option<i128> {
        match (&self.best, self.floor) {
            (Some((b, _)), Some(f)) => Some((*b).max(f)),
            (Some((b, _)), None) => Some(*b),
            (None, f) => f,
        }
    }

    fn run(mut self, start: usize, counter: &mut Counter) -> Result<Option<(i128, Vec<usize>)>, OracleError> {
        if self.allowed & (1 << start) == 0 {
            return Ok(None);
        }
        let visited = 1u64 << start;
        let rem = self.c.bound(self.allowed & !visited);
        self.stack.push(start);
        self.dfs(start, visited, 0, rem, counter)?;
        Ok(self.best)
    }

    fn dfs(&mut self, v: usize, visited: u64, cur: i128, rem: i128, counter: &mut Counter) -> Result<(), OracleError> {
        counter.tick()?;
        if let Some(t) = self.threshold() {
            if cur + rem <= t {
                return Ok(());
            }
        }
        let ends_here = match self.target {
            Some(t) => v == t,
            None => true,
        };
        if ends_here && self.threshold().map_or(true, |t| cur > t) {
            self.best = Some((cur, self.stack.clone()));
        }
        if self.target == Some(v) {
            return Ok(());
        }
        let c = self.c;
        for &u in &c.adj[v] {
            let bit = 1u64 << u;
            if visited & bit != 0 || self.allowed & bit == 0 {
                continue;
            }
            self.stack.push(u);
            self.dfs(u, visited | bit, cur + c.weight(v, u), rem - c.max_in[u], counter)?;
            self.stack.pop();
        }
        Ok(())
    }
}

/// Hamilton path of `allowed` from `start`, ending at `target` when given.
struct HamiltonSearch<'a> {
    c: &'a Compact,
    target: Option<usize>,
    allowed: u64,
    stack: Vec<usize>,
    /// Extra acceptance test on a complete path (used for cycles).
    close_to: Option<usize>,
}

impl<'a> HamiltonSearch<'a> {
    fn run(mut self, start: usize, counter: &mut Counter) -> Result<Option<Vec<usize>>, OracleError> {
        if self.allowed & (1 << start) == 0 {
            return Ok(None);
        }
        if let Some(t) = self.target {
            if self.allowed & (1 << t) == 0 {
                return Ok(None);
            }
        }
        self.stack.push(start);
        if self.dfs(start, 1 << start, counter)? {
            Ok(Some(self.stack))
        } else {
            Ok(None)
        }
    }

    fn feasible(&self, v: usize, visited: u64) -> bool {
        let c = self.c;
        let unvisited = self.allowed & !visited;
        if unvisited == 0 {
            return true;
        }
        if c.reach(v, unvisited | (1 << v)) & unvisited != unvisited {
            return false;
        }
        // vertices that cannot be interior must be the final endpoint
        let mut deficient = 0;
        let extra = self.close_to.map_or(0, |s| 1u64 << s);
        let mut m = unvisited;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            let avail = (c.adj_mask[u] & (unvisited | extra | (1 << v))).count_ones();
            let is_target = self.target == Some(u);
            if avail == 0 || (is_target && avail < 1) {
                return false;
            }
            if avail < 2 && !is_target {
                deficient += 1;
            }
        }
        let slack = if self.target.is_some() || self.close_to.is_some() { 0 } else { 1 };
        deficient <= slack
    }

    fn dfs(&mut self, v: usize, visited: u64, counter: &mut Counter) -> Result<bool, OracleError> {
        counter.tick()?;
        if visited == self.allowed {
            let ok = match (self.target, self.close_to) {
                (Some(t), _) => v == t,
                (None, Some(s)) => self.c.adj_mask[v] & (1 << s) != 0,
                (None, None) => true,
            };
            return Ok(ok);
        }
        if self.target == Some(v) || !self.feasible(v, visited) {
            return Ok(false);
        }
        let c = self.c;
        let remaining = (self.allowed & !visited).count_ones();
        for &u in &c.adj[v] {
            let bit = 1u64 << u;
            if visited & bit != 0 || self.allowed & bit == 0 {
                continue;
            }
            if self.target == Some(u) && remaining > 1 {
                continue;
            }
            self.stack.push(u);
            if self.dfs(u, visited | bit, counter)? {
                return Ok(true);
            }
            self.stack.pop();
        }
        Ok(false)
    }
}

fn anchors(c: &Compact, x: Vertex, y: Vertex) -> Result<(usize, usize), OracleError> {
    if x == y {
        return Err(OracleError::SameAnchors(x));
    }
    Ok((c.index(x)?, c.index(y)?))
}

fn into_heaviest(g: &WeightedGraph, c: &Compact, found: (i128, Vec<usize>)) -> Heaviest {
    let path = g.path(c.to_ids(&found.1)).expect("oracle produced an invalid path");
    debug_assert_eq!(path.weight(), &c.to_rational(found.0));
    Heaviest { weight: c.to_rational(found.0), path }
}

/// Maximum-weight `(x, y)`-path; `None` when `x` and `y` are disconnected.
pub fn heaviest_xy_path(
    g: &WeightedGraph,
    x: Vertex,
    y: Vertex,
    budget: &OracleBudget,
) -> Result<Option<Heaviest>, OracleError> {
    let c = Compact::new(g, budget)?;
    let (xi, yi) = anchors(&c, x, y)?;
    let mut counter = Counter::new(budget);
    let found = PathSearch::new(&c, Some(yi), c.full(), None).run(xi, &mut counter)?;
    Ok(found.map(|f| into_heaviest(g, &c, f)))
}

/// Maximum-weight path starting at `x`; the single vertex counts.
pub fn heaviest_x_path(g: &WeightedGraph, x: Vertex, budget: &OracleBudget) -> Result<Heaviest, OracleError> {
    let c = Compact::new(g, budget)?;
    let xi = c.index(x)?;
    let mut counter = Counter::new(budget);
    let found = PathSearch::new(&c, None, c.full(), None).run(xi, &mut counter)?;
    Ok(into_heaviest(g, &c, found.expect("single vertex path always exists")))
}

/// Maximum-weight path anywhere in the graph; `None` only for the empty graph.
pub fn heaviest_path(g: &WeightedGraph, budget: &OracleBudget) -> Result<Option<Heaviest>, OracleError> {
    let c = Compact::new(g, budget)?;
    let mut counter = Counter::new(budget);
    let mut best: Option<(i128, Vec<usize>)> = None;
    for s in 0..c.n() {
        let floor = best.as_ref().map(|b| b.0);
        if let Some(found) = PathSearch::new(&c, None, c.full(), floor).run(s, &mut counter)? {
            best = Some(found);
        }
    }
    Ok(best.map(|b| into_heaviest(g, &c, b)))
}

pub fn heaviest_cycle(g: &WeightedGraph, budget: &OracleBudget) -> Result<Option<Cycle>, OracleError> {
    heaviest_cycle_within(g, usize::MAX, budget)
}

/// Maximum-weight cycle with at most `max_len` vertices; `None` if there is none.
pub fn heaviest_cycle_within(
    g: &WeightedGraph,
    max_len: usize,
    budget: &OracleBudget,
) -> Result<Option<Cycle>, OracleError> {
    let c = Compact::new(g, budget)?;
    let mut counter = Counter::new(budget);
    let mut search = CycleSearch { c: &c, max_len, stack: Vec::new(), best: None };
    for s in 0..c.n() {
        let above = c.full() & !((1u64 << s) | ((1u64 << s) - 1));
        search.stack.clear();
        search.stack.push(s);
        let rem = c.bound(above) + c.max_in[s];
        search.dfs(s, s, 1 << s, above, 0, rem, &mut counter)?;
    }
    Ok(search.best.map(|(w, seq)| Cycle { weight: c.to_rational(w), vertices: c.to_ids(&seq) }))
}

struct CycleSearch<'a> {
    c: &'a Compact,
    max_len: usize,
    stack: Vec<usize>,
    best: Option<(i128, Vec<usize>)>,
}

impl CycleSearch<'_> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        start: usize,
        v: usize,
        visited: u64,
        allowed: u64,
        cur: i128,
        rem: i128,
        counter: &mut Counter,
    ) -> Result<(), OracleError> {
        counter.tick()?;
        let c = self.c;
        if let Some((b, _)) = &self.best {
            if cur + rem <= *b {
                return Ok(());
            }
        }
        let len = self.stack.len();
        if len >= 3 && c.adj_mask[v] & (1 << start) != 0 && self.stack[1] < v {
            let total = cur + c.weight(v, start);
            if self.best.as_ref().map_or(true, |(b, _)| total > *b) {
                self.best = Some((total, self.stack.clone()));
            }
        }
        if len >= self.max_len {
            return Ok(());
        }
        for &u in &c.adj[v] {
            let bit = 1u64 << u;
            if visited & bit != 0 || allowed & bit == 0 {
                continue;
            }
            self.stack.push(u);
            self.dfs(start, u, visited | bit, allowed, cur + c.weight(v, u), rem - c.max_in[u], counter)?;
            self.stack.pop();
        }
        Ok(())
    }
}

fn hamilton(
    g: &WeightedGraph,
    c: &Compact,
    start: usize,
    target: Option<usize>,
    allowed: u64,
    counter: &mut Counter,
) -> Result<Option<Path>, OracleError> {
    let search = HamiltonSearch { c, target, allowed, stack: Vec::new(), close_to: None };
    Ok(search
        .run(start, counter)?
        .map(|seq| g.path(c.to_ids(&seq)).expect("oracle produced an invalid path")))
}

pub fn hamilton_xy_path(
    g: &WeightedGraph,
    x: Vertex,
    y: Vertex,
    budget: &OracleBudget,
) -> Result<Option<Path>, OracleError> {
    let c = Compact::new(g, budget)?;
    let (xi, yi) = anchors(&c, x, y)?;
    hamilton(g, &c, xi, Some(yi), c.full(), &mut Counter::new(budget))
}

pub fn hamilton_x_path(g: &WeightedGraph, x: Vertex, budget: &OracleBudget) -> Result<Option<Path>, OracleError> {
    let c = Compact::new(g, budget)?;
    let xi = c.index(x)?;
    hamilton(g, &c, xi, None, c.full(), &mut Counter::new(budget))
}

/// Any Hamilton path, trying start vertices in increasing order.
pub fn hamilton_path(g: &WeightedGraph, budget: &OracleBudget) -> Result<Option<Path>, OracleError> {
    let c = Compact::new(g, budget)?;
    let mut counter = Counter::new(budget);
    for s in 0..c.n() {
        if let Some(p) = hamilton(g, &c, s, None, c.full(), &mut counter)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Hamilton cycle through the smallest vertex, as a vertex sequence without
/// the closing repeat.
pub fn hamilton_cycle(g: &WeightedGraph, budget: &OracleBudget) -> Result<Option<Vec<Vertex>>, OracleError> {
    let c = Compact::new(g, budget)?;
    if c.n() < 3 {
        return Ok(None);
    }
    let search = HamiltonSearch { c: &c, target: None, allowed: c.full(), stack: Vec::new(), close_to: Some(0) };
    Ok(search.run(0, &mut Counter::new(budget))?.map(|seq| c.to_ids(&seq)))
}

/// Heaviest vertex-disjoint pair of an `x`-path and a `y`-path. The pair of
/// single vertices is always feasible, so this never fails for lack of paths.
pub fn best_disjoint_pair(
    g: &WeightedGraph,
    x: Vertex,
    y: Vertex,
    budget: &OracleBudget,
) -> Result<DisjointPair, OracleError> {
    let c = Compact::new(g, budget)?;
    let (xi, yi) = anchors(&c, x, y)?;
    let mut counter = Counter::new(budget);
    let mut search = PairSearch { c: &c, y: yi, stack: vec![xi], best: None };
    let visited = 1u64 << xi;
    let rem = c.bound(c.full() & !visited & !(1 << yi));
    search.dfs(xi, visited, 0, rem, &mut counter)?;
    let (total, first, second) = search.best.expect("singleton pair is always feasible");
    let first = g.path(c.to_ids(&first)).expect("oracle produced an invalid path");
    let second = g.path(c.to_ids(&second)).expect("oracle produced an invalid path");
    Ok(DisjointPair { weight: c.to_rational(total), first, second })
}

struct PairSearch<'a> {
    c: &'a Compact,
    y: usize,
    stack: Vec<usize>,
    best: Option<(i128, Vec<usize>, Vec<usize>)>,
}

impl PairSearch<'_> {
    fn dfs(&mut self, v: usize, visited: u64, cur: i128, rem: i128, counter: &mut Counter) -> Result<(), OracleError> {
        counter.tick()?;
        let c = self.c;
        let incumbent = self.best.as_ref().map(|b| b.0);
        if let Some(b) = incumbent {
            if cur + rem <= b {
                return Ok(());
            }
        }
        let floor = incumbent.map(|b| b - cur);
        let inner = PathSearch::new(c, None, c.full() & !visited, floor).run(self.y, counter)?;
        if let Some((w2, second)) = inner {
            if incumbent.map_or(true, |b| cur + w2 > b) {
                self.best = Some((cur + w2, self.stack.clone(), second));
            }
        }
        for &u in &c.adj[v] {
            let bit = 1u64 << u;
            if visited & bit != 0 || u == self.y {
                continue;
            }
            self.stack.push(u);
            self.dfs(u, visited | bit, cur + c.weight(v, u), rem - c.max_in[u], counter)?;
            self.stack.pop();
        }
        Ok(())
    }
}

/// Disjoint `x`-path and `y`-path covering every vertex, or `None`.
pub fn spanning_disjoint_pair(
    g: &WeightedGraph,
    x: Vertex,
    y: Vertex,
    budget: &OracleBudget,
) -> Result<Option<(Path, Path)>, OracleError> {
    let c = Compact::new(g, budget)?;
    let (xi, yi) = anchors(&c, x, y)?;
    let mut counter = Counter::new(budget);
    let mut search = SpanningSearch { c: &c, y: yi, stack: vec![xi] };
    Ok(search.dfs(xi, 1 << xi, &mut counter)?.map(|(first, second)| {
        (
            g.path(c.to_ids(&first)).expect("oracle produced an invalid path"),
            g.path(c.to_ids(&second)).expect("oracle produced an invalid path"),
        )
    }))
}

struct SpanningSearch<'a> {
    c: &'a Compact,
    y: usize,
    stack: Vec<usize>,
}

impl SpanningSearch<'_> {
    fn dfs(
        &mut self,
        v: usize,
        visited: u64,
        counter: &mut Counter,
    ) -> Result<Option<(Vec<usize>, Vec<usize>)>, OracleError> {
        counter.tick()?;
        let c = self.c;
        let residual = c.full() & !visited;
        let y_side = c.reach(self.y, residual);
        let rest = residual & !y_side;
        let mut entry = u64::MAX;
        if rest != 0 {
            // the x-path must swallow everything off y's side in one sweep
            let first = rest.trailing_zeros() as usize;
            let comp = c.reach(first, rest);
            if comp != rest || c.adj_mask[v] & comp == 0 {
                return Ok(None);
            }
            entry = comp;
        } else {
            let search = HamiltonSearch { c, target: None, allowed: residual, stack: Vec::new(), close_to: None };
            if let Some(second) = search.run(self.y, counter)? {
                return Ok(Some((self.stack.clone(), second)));
            }
        }
        for &u in &c.adj[v] {
            let bit = 1u64 << u;
            if visited & bit != 0 || u == self.y || entry & bit == 0 {
                continue;
            }
            self.stack.push(u);
            if let Some(found) = self.dfs(u, visited | bit, counter)? {
                return Ok(Some(found));
            }
            self.stack.pop();
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn triangle(a: i64, b: i64, c: i64) -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, int(a)), (1, 2, int(b)), (0, 2, int(c))]).unwrap()
    }

    fn complete(n: usize, w: i64) -> WeightedGraph {
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, int(w)).unwrap();
            }
        }
        g
    }

    #[test]
    fn xy_path_small_cases() {
        let b = OracleBudget::default();
        let single = WeightedGraph::from_edges(2, [(0, 1, int(3))]).unwrap();
        assert_eq!(heaviest_xy_path(&single, 0, 1, &b).unwrap().unwrap().weight, int(3));
        let tri = triangle(1, 1, 1);
        let best = heaviest_xy_path(&tri, 0, 1, &b).unwrap().unwrap();
        assert_eq!(best.weight, int(2));
        assert_eq!(best.path.vertices(), &[0, 2, 1]);
        assert_eq!(heaviest_xy_path(&WeightedGraph::new(2), 0, 1, &b).unwrap(), None);
        assert_eq!(heaviest_xy_path(&tri, 1, 1, &b), Err(OracleError::SameAnchors(1)));
        assert_eq!(heaviest_xy_path(&tri, 0, 7, &b), Err(OracleError::MissingVertex(7)));
    }

    #[test]
    fn other_maxima() {
        let b = OracleBudget::default();
        assert_eq!(heaviest_path(&WeightedGraph::new(1), &b).unwrap().unwrap().weight, int(0));
        assert_eq!(heaviest_cycle(&triangle(1, 2, 3), &b).unwrap().unwrap().weight, int(6));
        let p3 = WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1))]).unwrap();
        assert_eq!(heaviest_cycle(&p3, &b).unwrap(), None);
        assert_eq!(heaviest_cycle_within(&complete(4, 1), 3, &b).unwrap().unwrap().vertices.len(), 3);
    }

    #[test]
    fn hamilton_small_cases() {
        let b = OracleBudget::default();
        let k4 = complete(4, 1);
        let p = hamilton_xy_path(&k4, 0, 3, &b).unwrap().unwrap();
        assert!(p.is_spanning(&k4));
        let p3 = WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1))]).unwrap();
        assert_eq!(hamilton_xy_path(&p3, 0, 2, &b).unwrap().unwrap().vertices(), &[0, 1, 2]);
        assert_eq!(hamilton_xy_path(&p3, 0, 1, &b).unwrap(), None);
        assert_eq!(hamilton_cycle(&p3, &b).unwrap(), None);
        assert_eq!(hamilton_cycle(&k4, &b).unwrap().unwrap().len(), 4);
    }

    #[test]
    fn pairs_always_have_singletons() {
        let b = OracleBudget::default();
        let g = WeightedGraph::new(2);
        let pair = best_disjoint_pair(&g, 0, 1, &b).unwrap();
        assert_eq!(pair.weight, int(0));
        assert_eq!(pair.first.vertices(), &[0]);
        assert_eq!(pair.second.vertices(), &[1]);
        let tri = triangle(1, 5, 2);
        let pair = best_disjoint_pair(&tri, 0, 1, &b).unwrap();
        assert_eq!(pair.weight, int(5));
        assert_eq!(spanning_disjoint_pair(&tri, 0, 1, &b).unwrap().unwrap().0.vertices(), &[0]);
    }

    #[test]
    fn budget_is_enforced() {
        let k5 = complete(5, 1);
        let tight = OracleBudget { max_vertices: 4, node_limit: None };
        assert!(matches!(heaviest_path(&k5, &tight), Err(OracleError::TooManyVertices { .. })));
        let nodes = OracleBudget::with_node_limit(3);
        let err = heaviest_xy_path(&k5, 0, 1, &nodes).unwrap_err();
        assert!(err.is_budget());
    }
}
