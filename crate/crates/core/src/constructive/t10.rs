//! Heavy `(x, y)`-path, or disjoint `x`-path and `y`-path that are heavy
//! together or cover every vertex, under the triple-max condition outside
//! `{x, y}`.

use num_traits::{Signed, Zero};

use super::t5::{self, done, split_components};
use super::{
    heaviest_neighbor, position, settle_t10, side, sum_degrees_at_least, uses_edge, Ctx, Level, PathOutcome,
    T10Outcome,
};
use crate::conditions::ConditionKind;
use crate::constructive::trace::{Procedure, Rewrite, TraceStep};
use crate::constructive::ConstructError;
use crate::graph::{Vertex, WeightedGraph};
use crate::oracle;
use crate::rational::Rational;

type Out = Result<Level<T10Outcome>, ConstructError>;

fn finish(ctx: &Ctx, g: &WeightedGraph, mut step: TraceStep, x: Vertex, y: Vertex, d: &Rational) -> Out {
    let out = settle_t10(ctx, g, &mut step, x, y, d)?;
    Ok(Level::Done(out, step))
}

pub(crate) fn run(ctx: &Ctx, g: &WeightedGraph, x: Vertex, y: Vertex, d: &Rational, depth: usize, mirrored: bool) -> Out {
    let mut step = TraceStep::new(Procedure::T10, depth, vec![x, y], g.vertex_count(), d.clone());
    step.mirrored = mirrored;
    ctx.enter(g, &[x, y], ConditionKind::TripleMax, d, depth, "T10 entry")?;

    if !d.is_positive() {
        step.case = "d <= 0".into();
        let p = g.bfs_path(x, y, &[], &[]).ok_or_else(|| ctx.internal("T10 d <= 0", "no (x,y)-path"))?;
        step.ops.push(Rewrite::Literal(p));
        return finish(ctx, g, step, x, y, d);
    }

    if g.vertex_count() == 3 {
        step.case = "n = 3".into();
        let c = g.vertices().find(|&v| v != x && v != y).unwrap();
        let (wx, wy) = (g.weight(x, c).unwrap(), g.weight(y, c).unwrap());
        if &(wx + wy) >= d {
            step.ops.push(Rewrite::Literal(vec![x, c, y]));
        } else if wx >= wy {
            step.ops.extend([Rewrite::Literal(vec![x, c]), Rewrite::Literal(vec![y])]);
        } else {
            step.ops.extend([Rewrite::Literal(vec![x]), Rewrite::Literal(vec![y, c])]);
        }
        return finish(ctx, g, step, x, y, d);
    }

    let h = g.without(&[x]).unwrap();
    if h.is_two_connected() {
        step.case = "Case 1".into();
        let xp = heaviest_neighbor(g, x, Some(y)).ok_or_else(|| ctx.internal("T10 Case 1", "x has no neighbour but y"))?;
        step.x_prime = Some(xp);
        let rest = d - g.weight(x, xp).unwrap();
        let (o, child) = done(run(ctx, &h, xp, y, &rest, depth + 1, false)?, ctx, "T10 Case 1")?;
        step.children.push(child);
        step.ops = vec![Rewrite::Literal(vec![x, xp]), Rewrite::ChildPath(0, 0), Rewrite::Join];
        if !matches!(o, T10Outcome::HeavyXYPath(_)) {
            step.ops.push(Rewrite::ChildPath(0, 1));
        }
        return finish(ctx, g, step, x, y, d);
    }

    let z = h.cut_vertices().map_err(|e| ctx.internal("T10 Case 2", e.to_string()))?[0];
    step.cut = Some(z);
    let comps = h.components_after_removal(&[z]);

    if y == z {
        step.case = "Case 2.1".into();
        let (h1, h2) = split_components(&comps, comps[0][0]);
        step.h1 = h1.clone();
        step.h2 = h2.clone();
        let (g1, add1) = side(g, &h1, x, y);
        let (g2, add2) = side(g, &h2, x, y);
        if add1 || add2 {
            step.added_edges.push((x, y));
        }
        for (i, (gi, hi)) in [(&g1, &h1), (&g2, &h2)].into_iter().enumerate() {
            if sum_degrees_at_least(g, hi, d) {
                step.case = format!("Case 2.1 heavy side G{}", i + 1);
                ctx.enter(gi, &[x, y], ConditionKind::DiracMin, d, depth + 1, "T10 Case 2.1 heavy side")?;
                let p = ctx.heavy_xy(gi, x, y, d, depth + 1)?;
                step.notes.push(format!("heavy (x,y)-path of G{} from the exact oracle", i + 1));
                step.ops = vec![Rewrite::Literal(p)];
                return finish(ctx, g, step, x, y, d);
            }
        }
        for (i, gi) in [&g1, &g2].into_iter().enumerate() {
            let (o, t) = done(t5::run(ctx, gi, x, y, d, depth + 1, false)?, ctx, "T10 Case 2.1")?;
            step.children.push(t);
            if let PathOutcome::HeavyPath(_) = o {
                step.case = format!("Case 2.1 heavy in G{}", i + 1);
                step.ops = vec![Rewrite::Child(i)];
                return finish(ctx, g, step, x, y, d);
            }
        }
        step.case = "Case 2.1 Hamilton cycle".into();
        step.notes.push("split the Hamilton cycle at x and y".into());
        step.ops = vec![
            Rewrite::Child(0),
            Rewrite::TrimEnd(1),
            Rewrite::Child(1),
            Rewrite::Reverse,
            Rewrite::TrimEnd(1),
        ];
        return finish(ctx, g, step, x, y, d);
    }

    let (h1, h2) = split_components(&comps, y);
    step.h1 = h1.clone();
    step.h2 = h2.clone();
    let (g1, add1) = side(g, &h1, x, z);
    let (g2, add2) = side(g, &h2, x, z);
    if add1 || add2 {
        step.added_edges.push((x, z));
    }
    let (o2, t2) = done(run(ctx, &g2, x, z, d, depth + 1, false)?, ctx, "T10 Case 2.2")?;
    step.children.push(t2);
    let tail = g1
        .bfs_path(z, y, &[x], &[])
        .ok_or_else(|| ctx.internal("T10 Case 2.2", "no (z,y)-path avoiding x in G1"))?;

    if let T10Outcome::HeavyXYPath(_) = o2 {
        step.case = "Case 2.2 heavy (x,z)-path".into();
        step.ops = vec![Rewrite::ChildPath(0, 0), Rewrite::Literal(tail), Rewrite::Join];
        return finish(ctx, g, step, x, y, d);
    }
    let best = oracle::heaviest_xy_path(&g2, x, z, &ctx.opts.budget)?
        .ok_or_else(|| ctx.internal("T10 Case 2.2", "x and z disconnected in G2"))?;
    if &best.weight >= d {
        step.case = "Case 2.2 heavy (x,z)-path".into();
        step.notes.push("heavy (x,z)-path of G2 from the exact oracle".into());
        step.ops = vec![Rewrite::Literal(best.path.into_vertices()), Rewrite::Literal(tail), Rewrite::Join];
        return finish(ctx, g, step, x, y, d);
    }
    let mut back = tail.clone();
    back.reverse();
    if let T10Outcome::HeavyDisjointPair(..) = o2 {
        step.case = "Case 2.2 heavy pair".into();
        step.ops = vec![Rewrite::ChildPath(0, 0), Rewrite::Literal(back), Rewrite::ChildPath(0, 1), Rewrite::Join];
        return finish(ctx, g, step, x, y, d);
    }

    let h1_rest: Vec<Vertex> = h1.iter().copied().filter(|&v| v != y).collect();
    if sum_degrees_at_least(g, &h1_rest, d) {
        step.case = "Case 2.2.1".into();
        let mut g1p = g1.clone();
        let gadget = g1p.add_gadget_vertex((x, z)).unwrap();
        step.gadgets.push(gadget);
        let (o1, t1) = done(t5::run(ctx, &g1p, x, y, d, depth + 1, false)?, ctx, "T10 Case 2.2.1")?;
        step.children.push(t1);
        let p = o1.path().vertices().to_vec();
        match o1 {
            PathOutcome::HeavyPath(_) => {
                let skip: Vec<(Vertex, Vertex)> = if add2 { vec![(x, z)] } else { vec![] };
                let link = g2
                    .bfs_path(x, z, &[], &skip)
                    .ok_or_else(|| ctx.internal("T10 Case 2.2.1", "no (x,z)-path in G2"))?;
                step.ops = vec![Rewrite::Child(1)];
                if p.get(1) == Some(&gadget) {
                    step.notes.push("replace x x' z by an (x,z)-path of G2".into());
                    step.ops.extend([Rewrite::Literal(link), Rewrite::Splice { from: 0, to: 2 }]);
                } else if add1 && p.get(1) == Some(&z) {
                    step.notes.push("replace added edge xz by an (x,z)-path of G2".into());
                    step.ops.extend([Rewrite::Literal(link), Rewrite::Splice { from: 0, to: 1 }]);
                }
            }
            PathOutcome::HamiltonPath(_) => {
                if p.get(1) != Some(&gadget) || p.get(2) != Some(&z) {
                    return Err(ctx.internal("T10 Case 2.2.1", "Hamilton path of G1' avoids x x' z"));
                }
                step.notes.push("drop x x' z and attach the z-path of G2".into());
                step.ops = vec![
                    Rewrite::ChildPath(0, 0),
                    Rewrite::Child(1),
                    Rewrite::TrimStart(2),
                    Rewrite::Reverse,
                    Rewrite::ChildPath(0, 1),
                    Rewrite::Join,
                ];
            }
        }
        return finish(ctx, g, step, x, y, d);
    }

    // some vertex of H1 other than y is light: G2 has a Hamilton (x,z)-path
    let (o2h, t2h) = done(t5::run(ctx, &g2, x, z, d, depth + 1, false)?, ctx, "T10 Case 2.2.2")?;
    step.children.push(t2h);
    if !matches!(o2h, PathOutcome::HamiltonPath(_)) || o2h.path().weight() >= d {
        return Err(ctx.internal("T10 Case 2.2.2", "expected a light Hamilton (x,z)-path of G2"));
    }

    if h2.len() >= 2 {
        step.case = "Case 2.2.2 |H2| >= 2".into();
        let mut g1p = g1.clone();
        let gadget = g1p.add_gadget_vertex((x, z)).unwrap();
        step.gadgets.push(gadget);
        let (o1, t1) = done(run(ctx, &g1p, x, y, d, depth + 1, false)?, ctx, "T10 Case 2.2.2")?;
        step.children.push(t1);
        step.ops = lift_gadget(&o1, gadget, z, add1);
        step.notes.push("replace gadget parts by pieces of the Hamilton (x,z)-path of G2".into());
        return finish(ctx, g, step, x, y, d);
    }

    let xp = h2[0];
    step.x_prime = Some(xp);
    if g.degree(xp) != 2 || &g.weighted_degree(xp, None).unwrap() >= d {
        return Err(ctx.internal("T10 Case 2.2.2", format!("vertex {xp} should have degree 2 and be light")));
    }
    if mirrored {
        step.case = "Case 2.2.2 stop".into();
        step.notes.push(format!("low-degree neighbour {xp} found with cut vertex {z}"));
        return Ok(Level::Stop { low: xp, trace: step });
    }
    let k = step.children.len();
    let yp = match run(ctx, g, y, x, d, depth + 1, true)? {
        Level::Done(o, t) => {
            step.case = "Case 2.2.2 mirrored".into();
            step.notes.push("the run with anchors swapped produced the witness".into());
            step.children.push(t);
            step.ops = match o {
                T10Outcome::HeavyXYPath(_) => vec![Rewrite::Child(k), Rewrite::Reverse],
                _ => vec![Rewrite::ChildPath(k, 1), Rewrite::ChildPath(k, 0)],
            };
            return finish(ctx, g, step, x, y, d);
        }
        Level::Stop { low, trace, .. } => {
            step.children.push(trace);
            low
        }
    };
    step.notes.push(format!("y' = {yp}"));
    if !g.has_edge(y, yp) || yp == x || g.degree(yp) != 2 {
        return Err(ctx.internal("T10 Case 2.2.2", format!("y' = {yp} is not a degree-2 neighbour of y")));
    }
    let k = step.children.len();
    let zero = Rational::zero();

    if yp == z {
        if g.degree(z) != 2 {
            return Err(ctx.internal("T10 Case 2.2.2 y' = z", "z should have degree 2"));
        }
        if h1.len() == 1 {
            step.case = "Case 2.2.2 y' = z, H1 = {y}".into();
            step.ops = vec![Rewrite::Literal(vec![x, xp, z]), Rewrite::Literal(vec![y])];
            return finish(ctx, g, step, x, y, d);
        }
        step.case = "Case 2.2.2 y' = z".into();
        let mut keep = h1.clone();
        keep.push(x);
        let mut g1p = g.induced_copy(&keep).unwrap();
        if g1p.add_edge_if_absent(x, y, zero, true).unwrap() {
            step.added_edges.push((x, y));
        }
        let (o1, t1) = done(t5::run(ctx, &g1p, x, y, d, depth + 1, false)?, ctx, "T10 Case 2.2.2 y' = z")?;
        step.children.push(t1);
        step.ops = match o1 {
            PathOutcome::HeavyPath(_) => vec![Rewrite::Child(k)],
            PathOutcome::HamiltonPath(_) => vec![
                Rewrite::Literal(vec![x, xp, z]),
                Rewrite::Child(k),
                Rewrite::TrimStart(1),
                Rewrite::Reverse,
            ],
        };
        return finish(ctx, g, step, x, y, d);
    }

    let ypp = g.neighbors(yp).iter().copied().find(|&v| v != y).unwrap();
    step.notes.push(format!("y'' = {ypp}"));

    if ypp == z {
        step.case = "Case 2.2.2 y'' = z".into();
        let mut gp = g.clone();
        gp.add_edge(xp, yp, zero).map_err(|e| ctx.internal("T10 Case 2.2.2 y'' = z", e.to_string()))?;
        mark(&mut gp, xp, yp);
        step.added_edges.push((xp, yp));
        let (o, t) = done(t5::run(ctx, &gp, x, y, d, depth + 1, false)?, ctx, "T10 Case 2.2.2 y'' = z")?;
        step.children.push(t);
        let p = o.path().vertices().to_vec();
        step.ops = if let Some(i) = edge_index(&p, xp, yp) {
            step.notes.push("split at the added edge x'y'".into());
            vec![Rewrite::Child(k), Rewrite::SplitAfter(i), Rewrite::Reverse]
        } else if let PathOutcome::HeavyPath(_) = o {
            vec![Rewrite::Child(k)]
        } else {
            step.notes.push("Hamilton (x,y)-path split at its first edge".into());
            vec![Rewrite::Child(k), Rewrite::SplitAfter(0), Rewrite::Reverse]
        };
        return finish(ctx, g, step, x, y, d);
    }

    step.case = "Case 2.2.2 y'' != z".into();
    let mut g1p = g1.clone();
    let mut added: Vec<(Vertex, Vertex)> = Vec::new();
    if add1 {
        added.push((x, z));
    }
    for v in [yp, ypp] {
        if g1p.add_edge_if_absent(z, v, zero.clone(), true).unwrap() {
            added.push((z, v));
            step.added_edges.push((z, v));
        }
    }
    let (o1, t1) = done(t5::run(ctx, &g1p, x, y, d, depth + 1, false)?, ctx, "T10 Case 2.2.2 y'' != z")?;
    step.children.push(t1);
    let p = o1.path().vertices().to_vec();
    let used: Vec<(Vertex, Vertex)> = added.iter().copied().filter(|&(a, b)| uses_edge(&p, a, b)).collect();
    let xz_used = add1 && uses_edge(&p, x, z);
    let z_edges: Vec<(Vertex, Vertex)> = used.iter().copied().filter(|&e| e != (x, z)).collect();
    step.ops = match o1 {
        PathOutcome::HeavyPath(_) => {
            if used.is_empty() {
                vec![Rewrite::Child(k)]
            } else {
                step.notes.push("delete the added edges".into());
                let j = position(&p, z).unwrap();
                if used.len() == 1 {
                    let i = if p.get(j + 1).map_or(false, |&n| uses_edge(&[z, n], used[0].0, used[0].1)) { j } else { j - 1 };
                    vec![Rewrite::Child(k), Rewrite::SplitAfter(i), Rewrite::Reverse]
                } else {
                    vec![
                        Rewrite::Child(k),
                        Rewrite::SplitAfter(j),
                        Rewrite::Reverse,
                        Rewrite::Swap,
                        Rewrite::TrimEnd(1),
                        Rewrite::Swap,
                    ]
                }
            }
        }
        PathOutcome::HamiltonPath(_) => {
            if z_edges.is_empty() {
                vec![Rewrite::Literal(vec![x, xp]), Rewrite::Child(k), Rewrite::TrimStart(1), Rewrite::Reverse]
            } else if xz_used {
                vec![Rewrite::Literal(vec![x, xp, z]), Rewrite::Child(k), Rewrite::TrimStart(2), Rewrite::Reverse]
            } else if z_edges.len() == 1 {
                let (a, b) = z_edges[0];
                let i = edge_index(&p, a, b).unwrap();
                if p[i] == z {
                    vec![
                        Rewrite::Child(k),
                        Rewrite::SplitAfter(i),
                        Rewrite::Reverse,
                        Rewrite::Swap,
                        Rewrite::Append(xp),
                        Rewrite::Swap,
                    ]
                } else {
                    vec![Rewrite::Child(k), Rewrite::SplitAfter(i), Rewrite::Reverse, Rewrite::Append(xp)]
                }
            } else {
                let n = p.len();
                if n < 4 || p[n - 1] != y || p[n - 2] != yp || p[n - 3] != z || p[n - 4] != ypp {
                    return Err(ctx.internal("T10 Case 2.2.2 y'' != z", format!("unexpected Hamilton path {p:?}")));
                }
                step.notes.push("replace y'' z y' by the edge y''y'".into());
                vec![
                    Rewrite::Literal(vec![x, xp, z]),
                    Rewrite::Child(k),
                    Rewrite::Literal(vec![ypp, yp]),
                    Rewrite::Splice { from: n - 4, to: n - 2 },
                    Rewrite::TrimStart(1),
                    Rewrite::Reverse,
                ]
            }
        }
    };
    finish(ctx, g, step, x, y, d)
}

fn mark(g: &mut WeightedGraph, a: Vertex, b: Vertex) {
    let w = g.remove_edge(a, b).unwrap();
    g.add_edge_if_absent(a, b, w, true).unwrap();
}

/// Index `i` with `{p[i], p[i+1]} = {a, b}`.
fn edge_index(p: &[Vertex], a: Vertex, b: Vertex) -> Option<usize> {
    p.windows(2).position(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a))
}

/// Rewrites a witness of `G1'` (which has gadget `x'` on `x`, `z`) into one
/// of `G`, using the Hamilton `(x, z)`-path of `G2` (child 1).
fn lift_gadget(o1: &T10Outcome, gadget: Vertex, z: Vertex, add1: bool) -> Vec<Rewrite> {
    const C: usize = 2;
    const P2: usize = 1;
    // z h_k .. h_1: the z-path of G2 that avoids x
    let from_z = [Rewrite::ChildPath(P2, 0), Rewrite::Reverse, Rewrite::TrimEnd(1)];
    match o1 {
        T10Outcome::HeavyXYPath(p) => {
            let p = p.vertices();
            let mut ops = vec![Rewrite::ChildPath(C, 0)];
            if p.get(1) == Some(&gadget) {
                ops.extend([Rewrite::ChildPath(P2, 0), Rewrite::Splice { from: 0, to: 2 }]);
            } else if add1 && p.get(1) == Some(&z) {
                ops.extend([Rewrite::ChildPath(P2, 0), Rewrite::Splice { from: 0, to: 1 }]);
            }
            ops
        }
        T10Outcome::HeavyDisjointPair(a, b) | T10Outcome::SpanningDisjointPair(a, b) => {
            let (a, b) = (a.vertices(), b.vertices());
            let mut ops = vec![Rewrite::ChildPath(C, 0)];
            if a.len() >= 3 && a[1] == gadget && a[2] == z {
                ops.extend([Rewrite::ChildPath(P2, 0), Rewrite::Splice { from: 0, to: 2 }]);
            } else if a.len() == 3 && a[1] == z && a[2] == gadget {
                ops.extend([Rewrite::ChildPath(P2, 0), Rewrite::Splice { from: 0, to: 2 }]);
            } else if add1 && a.len() >= 2 && a[1] == z {
                ops.extend([Rewrite::ChildPath(P2, 0), Rewrite::Splice { from: 0, to: 1 }]);
            } else if a.len() == 2 && a[1] == gadget {
                ops.extend([Rewrite::ChildPath(P2, 0), Rewrite::TrimEnd(1), Rewrite::Splice { from: 0, to: 1 }]);
            } else if a.len() >= 3 && a[a.len() - 1] == gadget && a[a.len() - 2] == z {
                ops.extend(from_z.iter().cloned());
                ops.push(Rewrite::Splice { from: a.len() - 2, to: a.len() - 1 });
            }
            ops.push(Rewrite::ChildPath(C, 1));
            if b.len() >= 2 && b[b.len() - 1] == gadget && b[b.len() - 2] == z {
                ops.extend(from_z.iter().cloned());
                ops.push(Rewrite::Splice { from: b.len() - 2, to: b.len() - 1 });
            }
            ops
        }
    }
}
