//! Simple undirected graphs with exact non-negative edge weights.
//!
//! Vertex ids are small dense integers. Removing vertices (induced copies,
//! `G - x`) keeps the surviving ids unchanged, so a vertex keeps its name
//! through every construction step; gadget vertices take the next free id.

use std::collections::VecDeque;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{format_rational, is_negative, Rational};

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),
    #[error("edge {0}-{1} is not in the graph")]
    UnknownEdge(Vertex, Vertex),
    #[error("loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} has a negative weight")]
    NegativeWeight(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("path visits vertex {0} twice")]
    RepeatedVertex(Vertex),
    #[error("path is empty")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    weight: Rational,
    auxiliary: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    present: Vec<bool>,
    aux_vertex: Vec<bool>,
    matrix: Vec<Option<Edge>>,
    adjacency: Vec<Vec<Vertex>>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v, w)| format!("{u}-{v}:{}", format_rational(w)))
            .collect();
        f.debug_struct("WeightedGraph")
            .field("vertices", &self.vertices().collect::<Vec<_>>())
            .field("edges", &edges)
            .finish()
    }
}

impl WeightedGraph {
    /// Edgeless graph on vertices `0..n`.
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            present: vec![true; n],
            aux_vertex: vec![false; n],
            matrix: vec![None; n * n],
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Rational)>,
    {
        let mut g = WeightedGraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// One past the largest id ever allocated.
    pub fn capacity(&self) -> usize {
        self.present.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|p| **p).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.capacity()).filter(move |&v| self.present[v])
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.capacity() && self.present[v]
    }

    fn require(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::MissingVertex(v))
        }
    }

    fn slot(&self, u: Vertex, v: Vertex) -> usize {
        u * self.capacity() + v
    }

    /// Edges as `(u, v, w)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, &Rational)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adjacency[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v, &self.matrix[self.slot(u, v)].as_ref().unwrap().weight))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.adjacency[v].len()).sum::<usize>() / 2
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<&Rational> {
        if !self.contains(u) || !self.contains(v) {
            return None;
        }
        self.matrix[self.slot(u, v)].as_ref().map(|e| &e.weight)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn is_auxiliary_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u)
            && self.contains(v)
            && self.matrix[self.slot(u, v)].as_ref().is_some_and(|e| e.auxiliary)
    }

    pub fn is_auxiliary_vertex(&self, v: Vertex) -> bool {
        self.contains(v) && self.aux_vertex[v]
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        if self.contains(v) {
            &self.adjacency[v]
        } else {
            &[]
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, weight: Rational) -> Result<(), GraphError> {
        self.insert_edge(u, v, weight, false)
    }

    fn insert_edge(
        &mut self,
        u: Vertex,
        v: Vertex,
        weight: Rational,
        auxiliary: bool,
    ) -> Result<(), GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if is_negative(&weight) {
            return Err(GraphError::NegativeWeight(u.min(v), u.max(v)));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let edge = Edge { weight, auxiliary };
        let (a, b) = (self.slot(u, v), self.slot(v, u));
        self.matrix[a] = Some(edge.clone());
        self.matrix[b] = Some(edge);
        for (p, q) in [(u, v), (v, u)] {
            let list = &mut self.adjacency[p];
            let at = list.partition_point(|&x| x < q);
            list.insert(at, q);
        }
        Ok(())
    }

    /// Adds `uv` unless it already exists. Returns `true` when the edge was added.
    pub fn add_edge_if_absent(
        &mut self,
        u: Vertex,
        v: Vertex,
        weight: Rational,
        mark_auxiliary: bool,
    ) -> Result<bool, GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.insert_edge(u, v, weight, mark_auxiliary)?;
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<Rational, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::UnknownEdge(u.min(v), u.max(v)));
        }
        let (a, b) = (self.slot(u, v), self.slot(v, u));
        let edge = self.matrix[a].take().unwrap();
        self.matrix[b] = None;
        self.adjacency[u].retain(|&x| x != v);
        self.adjacency[v].retain(|&x| x != u);
        Ok(edge.weight)
    }

    /// Appends a fresh marked vertex joined to both ends of `attach` by marked
    /// zero-weight edges.
    pub fn add_gadget_vertex(&mut self, attach: (Vertex, Vertex)) -> Result<Vertex, GraphError> {
        self.require(attach.0)?;
        self.require(attach.1)?;
        if attach.0 == attach.1 {
            return Err(GraphError::SelfLoop(attach.0));
        }
        let old = self.capacity();
        let cap = old + 1;
        let mut matrix = vec![None; cap * cap];
        for u in 0..old {
            for v in 0..old {
                matrix[u * cap + v] = self.matrix[u * old + v].take();
            }
        }
        self.matrix = matrix;
        self.present.push(true);
        self.aux_vertex.push(true);
        self.adjacency.push(Vec::new());
        let fresh = old;
        self.insert_edge(attach.0, fresh, Rational::zero(), true)?;
        self.insert_edge(fresh, attach.1, Rational::zero(), true)?;
        Ok(fresh)
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> Result<(), GraphError> {
        self.require(v)?;
        for u in self.adjacency[v].clone() {
            self.remove_edge(u, v)?;
        }
        self.present[v] = false;
        Ok(())
    }

    /// `G[S]`, keeping the original ids.
    pub fn induced_copy(&self, keep: &[Vertex]) -> Result<WeightedGraph, GraphError> {
        let mut mask = vec![false; self.capacity()];
        for &v in keep {
            self.require(v)?;
            mask[v] = true;
        }
        let mut g = self.clone();
        for v in self.vertices() {
            if !mask[v] {
                g.remove_vertex(v)?;
            }
        }
        Ok(g)
    }

    /// `G - S`.
    pub fn without(&self, drop: &[Vertex]) -> Result<WeightedGraph, GraphError> {
        let mut g = self.clone();
        for &v in drop {
            g.remove_vertex(v)?;
        }
        Ok(g)
    }

    /// Sum of the weights of the listed edges.
    pub fn weight_of(&self, edges: &[(Vertex, Vertex)]) -> Result<Rational, GraphError> {
        let mut total = Rational::zero();
        for &(u, v) in edges {
            match self.weight(u, v) {
                Some(w) => total += w,
                None => return Err(GraphError::UnknownEdge(u.min(v), u.max(v))),
            }
        }
        Ok(total)
    }

    pub fn total_weight(&self) -> Rational {
        self.edges().fold(Rational::zero(), |acc, (_, _, w)| acc + w)
    }

    /// Weighted degree of `v`, optionally restricted to neighbors inside `within`.
    pub fn weighted_degree(
        &self,
        v: Vertex,
        within: Option<&[Vertex]>,
    ) -> Result<Rational, GraphError> {
        self.require(v)?;
        let mut total = Rational::zero();
        for &u in &self.adjacency[v] {
            if within.map_or(true, |s| s.contains(&u)) {
                total += self.weight(u, v).unwrap();
            }
        }
        Ok(total)
    }

    /// Validates `vertices` as a simple path of this graph and computes its weight.
    pub fn path(&self, vertices: Vec<Vertex>) -> Result<Path, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        let mut seen = vec![false; self.capacity()];
        for &v in &vertices {
            self.require(v)?;
            if seen[v] {
                return Err(GraphError::RepeatedVertex(v));
            }
            seen[v] = true;
        }
        let mut weight = Rational::zero();
        for pair in vertices.windows(2) {
            match self.weight(pair[0], pair[1]) {
                Some(w) => weight += w,
                None => {
                    return Err(GraphError::UnknownEdge(
                        pair[0].min(pair[1]),
                        pair[0].max(pair[1]),
                    ))
                }
            }
        }
        Ok(Path { vertices, weight })
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(start) => self.reach(start, &[]).iter().filter(|r| **r).count() == self.vertex_count(),
        }
    }

    /// Vertices reachable from `start` while avoiding `blocked`.
    fn reach(&self, start: Vertex, blocked: &[Vertex]) -> Vec<bool> {
        let mut seen = vec![false; self.capacity()];
        for &b in blocked {
            if b < seen.len() {
                seen[b] = true;
            }
        }
        let mut out = vec![false; self.capacity()];
        if seen[start] {
            return out;
        }
        seen[start] = true;
        out[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    out[u] = true;
                    queue.push_back(u);
                }
            }
        }
        out
    }

    pub fn is_two_connected(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.cut_vertices().map_or(false, |c| c.is_empty())
    }

    /// Articulation points in increasing order, from one low-link DFS.
    pub fn cut_vertices(&self) -> Result<Vec<Vertex>, GraphError> {
        let Some(root) = self.vertices().next() else {
            return Ok(Vec::new());
        };
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let cap = self.capacity();
        let mut order = vec![usize::MAX; cap];
        let mut low = vec![usize::MAX; cap];
        let mut is_cut = vec![false; cap];
        let mut counter = 0;
        // explicit stack of (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if let Some(&u) = self.adjacency[v].get(top.2) {
                top.2 += 1;
                if order[u] == usize::MAX {
                    order[u] = counter;
                    low[u] = counter;
                    counter += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else if u != parent {
                    low[v] = low[v].min(order[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= order[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
        Ok((0..cap).filter(|&v| is_cut[v]).collect())
    }

    /// Components of `G - S`, each sorted, ordered by smallest member.
    pub fn components_after_removal(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut assigned = vec![false; self.capacity()];
        for &r in removed {
            if r < assigned.len() {
                assigned[r] = true;
            }
        }
        let mut out = Vec::new();
        for v in self.vertices() {
            if assigned[v] {
                continue;
            }
            let blocked: Vec<Vertex> = (0..self.capacity()).filter(|&u| assigned[u]).collect();
            let reach = self.reach(v, &blocked);
            let comp: Vec<Vertex> = (0..self.capacity()).filter(|&u| reach[u]).collect();
            for &u in &comp {
                assigned[u] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Hop distance, `None` when disconnected.
    pub fn unweighted_distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>, GraphError> {
        self.require(u)?;
        self.require(v)?;
        let mut dist = vec![usize::MAX; self.capacity()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            if a == v {
                return Ok(Some(dist[a]));
            }
            for &b in &self.adjacency[a] {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        Ok(None)
    }

    /// Shortest `(from, to)`-path avoiding `blocked` vertices and `skip_edges`,
    /// ties broken towards smaller ids.
    pub fn bfs_path(
        &self,
        from: Vertex,
        to: Vertex,
        blocked: &[Vertex],
        skip_edges: &[(Vertex, Vertex)],
    ) -> Option<Vec<Vertex>> {
        if !self.contains(from) || !self.contains(to) || blocked.contains(&from) || blocked.contains(&to) {
            return None;
        }
        let skip = |a: Vertex, b: Vertex| skip_edges.iter().any(|&(p, q)| (p == a && q == b) || (p == b && q == a));
        let mut prev = vec![usize::MAX; self.capacity()];
        let mut seen = vec![false; self.capacity()];
        for &b in blocked {
            if b < seen.len() {
                seen[b] = true;
            }
        }
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            if a == to {
                let mut out = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    out.push(cur);
                }
                out.reverse();
                return Some(out);
            }
            for &b in &self.adjacency[a] {
                if !seen[b] && !skip(a, b) {
                    seen[b] = true;
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        None
    }
}

/// A simple path: distinct vertices, consecutive ones adjacent. A single
/// vertex is a path of weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<Vertex>,
    weight: Rational,
}

impl Path {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|p| (p[0], p[1]))
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges().any(|(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    pub fn is_spanning(&self, g: &WeightedGraph) -> bool {
        self.len() == g.vertex_count() && self.vertices.iter().all(|&v| g.contains(v))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn triangle(a: i64, b: i64, c: i64) -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, int(a)), (1, 2, int(b)), (0, 2, int(c))]).unwrap()
    }

    fn path3() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1))]).unwrap()
    }

    fn bowtie() -> WeightedGraph {
        // two triangles sharing vertex 2
        WeightedGraph::from_edges(
            5,
            [(0, 1, int(1)), (0, 2, int(1)), (1, 2, int(1)), (2, 3, int(1)), (2, 4, int(1)), (3, 4, int(1))],
        )
        .unwrap()
    }

    #[test]
    fn weight_of_sums_listed_edges() {
        let g = triangle(1, 2, 3);
        assert_eq!(g.weight_of(&[(0, 1), (1, 2), (0, 2)]).unwrap(), int(6));
        assert_eq!(g.weight_of(&[]).unwrap(), int(0));
        assert_eq!(g.weight_of(&[(0, 5)]), Err(GraphError::UnknownEdge(0, 5)));
    }

    #[test]
    fn weighted_degree_respects_within() {
        let g = triangle(1, 2, 3);
        assert_eq!(g.weighted_degree(0, None).unwrap(), int(4));
        assert_eq!(g.weighted_degree(0, Some(&[1])).unwrap(), int(1));
        assert!(g.weighted_degree(9, None).is_err());
    }

    #[test]
    fn connectivity_basics() {
        assert!(triangle(1, 1, 1).is_two_connected());
        assert!(!path3().is_two_connected());
        assert_eq!(path3().cut_vertices().unwrap(), vec![1]);
        assert!(triangle(1, 1, 1).cut_vertices().unwrap().is_empty());
        assert_eq!(bowtie().cut_vertices().unwrap(), vec![2]);
        let two = WeightedGraph::new(2);
        assert_eq!(two.cut_vertices(), Err(GraphError::Disconnected));
    }

    #[test]
    fn components_after_removal_sorted_by_smallest() {
        assert_eq!(triangle(1, 1, 1).components_after_removal(&[0]), vec![vec![1, 2]]);
        assert_eq!(bowtie().components_after_removal(&[2]), vec![vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn distance() {
        let g = path3();
        assert_eq!(g.unweighted_distance(0, 2).unwrap(), Some(2));
        assert_eq!(g.unweighted_distance(1, 1).unwrap(), Some(0));
        let mut h = WeightedGraph::new(3);
        h.add_edge(0, 1, int(1)).unwrap();
        assert_eq!(h.unweighted_distance(0, 2).unwrap(), None);
    }

    #[test]
    fn mutation_guards() {
        let mut g = triangle(1, 1, 1);
        assert_eq!(g.add_edge(0, 0, int(1)), Err(GraphError::SelfLoop(0)));
        assert_eq!(g.add_edge(1, 0, int(1)), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge_if_absent(0, 1, int(0), true), Ok(false));
        assert!(!g.is_auxiliary_edge(0, 1));
        let mut h = path3();
        assert_eq!(h.add_edge(0, 2, int(-1)), Err(GraphError::NegativeWeight(0, 2)));
        assert_eq!(h.add_edge_if_absent(0, 2, int(0), true), Ok(true));
        assert!(h.is_auxiliary_edge(2, 0));
    }

    #[test]
    fn gadget_vertex_gets_fresh_marked_id() {
        let mut g = triangle(1, 1, 1);
        let v = g.add_gadget_vertex((0, 2)).unwrap();
        assert_eq!(v, 3);
        assert_eq!(g.vertex_count(), 4);
        assert!(g.is_auxiliary_vertex(3));
        assert!(g.is_auxiliary_edge(0, 3) && g.is_auxiliary_edge(3, 2));
        assert_eq!(g.weight(0, 3), Some(&int(0)));
        assert_eq!(g.weight(0, 1), Some(&int(1)));
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn induced_copy_keeps_ids() {
        let g = triangle(1, 2, 3);
        let h = g.induced_copy(&[0, 2]).unwrap();
        assert_eq!(h.vertices().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(h.edges().count(), 1);
        assert_eq!(h.weight(0, 2), Some(&int(3)));
        // source untouched
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn path_validation() {
        let g = triangle(1, 2, 3);
        let p = g.path(vec![0, 2, 1]).unwrap();
        assert_eq!(p.weight(), &int(5));
        assert!(p.is_spanning(&g));
        assert_eq!(g.path(vec![1]).unwrap().weight(), &int(0));
        assert_eq!(g.path(vec![0, 1, 0]), Err(GraphError::RepeatedVertex(0)));
        assert_eq!(path3().path(vec![0, 2]), Err(GraphError::UnknownEdge(0, 2)));
        assert_eq!(g.path(vec![]), Err(GraphError::EmptyPath));
    }

    #[test]
    fn bfs_path_honours_blocks() {
        let g = bowtie();
        assert_eq!(g.bfs_path(0, 4, &[], &[]), Some(vec![0, 2, 4]));
        assert_eq!(g.bfs_path(0, 1, &[], &[(0, 1)]), Some(vec![0, 2, 1]));
        assert_eq!(g.bfs_path(0, 4, &[2], &[]), None);
    }
}
