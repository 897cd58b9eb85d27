//! Unpruned enumeration of every simple path and cycle. Slow, obviously
//! correct, and independent of the library's search code.

use heavypath::graph::WeightedGraph;
use heavypath::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

pub type Seq = Vec<usize>;

/// Every simple path starting at `start`, the single vertex included.
pub fn paths_from(g: &WeightedGraph, start: usize) -> Vec<Seq> {
    let mut out = Vec::new();
    let mut cur = vec![start];
    extend(g, &mut cur, &mut out);
    out
}

fn extend(g: &WeightedGraph, cur: &mut Seq, out: &mut Vec<Seq>) {
    out.push(cur.clone());
    let last = *cur.last().unwrap();
    for v in g.vertices() {
        if g.has_edge(last, v) && !cur.contains(&v) {
            cur.push(v);
            extend(g, cur, out);
            cur.pop();
        }
    }
}

pub fn weight(g: &WeightedGraph, p: &[usize]) -> Rational {
    p.windows(2).fold(Rational::zero(), |acc, w| acc + g.weight(w[0], w[1]).unwrap())
}

fn best(g: &WeightedGraph, candidates: impl Iterator<Item = Seq>) -> Option<(Rational, Seq)> {
    let mut out: Option<(Rational, Seq)> = None;
    for p in candidates {
        let w = weight(g, &p);
        let better = match &out {
            None => true,
            Some((bw, bp)) => w > *bw || (w == *bw && p < *bp),
        };
        if better {
            out = Some((w, p));
        }
    }
    out
}

/// Heaviest `(x, y)`-path, ties broken by the lexicographically smallest sequence.
pub fn heaviest_xy(g: &WeightedGraph, x: usize, y: usize) -> Option<(Rational, Seq)> {
    best(g, paths_from(g, x).into_iter().filter(|p| p.len() > 1 && *p.last().unwrap() == y))
}

pub fn heaviest_x(g: &WeightedGraph, x: usize) -> (Rational, Seq) {
    best(g, paths_from(g, x).into_iter()).unwrap()
}

/// Every cycle once: from its smallest vertex, second vertex below the last.
pub fn cycles(g: &WeightedGraph) -> Vec<Seq> {
    let mut out = Vec::new();
    for s in g.vertices() {
        for p in paths_from(g, s) {
            if p.len() >= 3 && p.iter().all(|&v| v >= s) && p[1] < *p.last().unwrap() && g.has_edge(*p.last().unwrap(), s) {
                out.push(p);
            }
        }
    }
    out
}

pub fn cycle_weight(g: &WeightedGraph, c: &[usize]) -> Rational {
    weight(g, c) + g.weight(*c.last().unwrap(), c[0]).unwrap()
}

pub fn heaviest_cycle(g: &WeightedGraph) -> Option<(Rational, Seq)> {
    let mut out: Option<(Rational, Seq)> = None;
    for c in cycles(g) {
        let w = cycle_weight(g, &c);
        let better = match &out {
            None => true,
            Some((bw, bc)) => w > *bw || (w == *bw && c < *bc),
        };
        if better {
            out = Some((w, c));
        }
    }
    out
}

fn mask(p: &[usize]) -> u64 {
    p.iter().fold(0, |m, &v| m | 1 << v)
}

/// Heaviest weight of a path from `start` for each vertex set it can cover.
fn best_by_mask(g: &WeightedGraph, start: usize) -> BTreeMap<u64, Rational> {
    let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
    for p in paths_from(g, start) {
        let w = weight(g, &p);
        let e = out.entry(mask(&p)).or_insert_with(|| w.clone());
        if w > *e {
            *e = w;
        }
    }
    out
}

/// Heaviest total weight of a disjoint `x`-path and `y`-path, over every
/// pair of vertex sets the two paths can occupy.
pub fn best_disjoint_pair_weight(g: &WeightedGraph, x: usize, y: usize) -> Rational {
    let xs = best_by_mask(g, x);
    let ys = best_by_mask(g, y);
    let mut out = Rational::zero();
    for (xm, xw) in &xs {
        for (ym, yw) in &ys {
            if xm & ym == 0 && xw.clone() + yw > out {
                out = xw.clone() + yw;
            }
        }
    }
    out
}

pub fn has_hamilton_xy(g: &WeightedGraph, x: usize, y: usize) -> bool {
    let n = g.vertex_count();
    paths_from(g, x).iter().any(|p| p.len() == n && *p.last().unwrap() == y)
}

pub fn has_spanning_pair(g: &WeightedGraph, x: usize, y: usize) -> bool {
    let full = g.vertices().fold(0u64, |m, v| m | 1 << v);
    let ys: Vec<u64> = paths_from(g, y).iter().map(|p| mask(p)).collect();
    paths_from(g, x).iter().any(|p| {
        let m = mask(p);
        ys.iter().any(|&ym| m & ym == 0 && m | ym == full)
    })
}
