//! `(x, y)`-path of weight `>= d` or a Hamilton `(x, y)`-path, under the
//! pair-max condition outside `{x, y}`.

use num_traits::Signed;

use super::{heaviest_neighbor, settle_path, side, Ctx, Level, PathOutcome};
use crate::conditions::ConditionKind;
use crate::constructive::trace::{Procedure, Rewrite, TraceStep};
use crate::constructive::ConstructError;
use crate::graph::{Vertex, WeightedGraph};
use crate::oracle;
use crate::rational::Rational;

pub(crate) fn run(
    ctx: &Ctx,
    g: &WeightedGraph,
    x: Vertex,
    y: Vertex,
    d: &Rational,
    depth: usize,
    mirrored: bool,
) -> Result<Level<PathOutcome>, ConstructError> {
    let mut step = TraceStep::new(Procedure::T5, depth, vec![x, y], g.vertex_count(), d.clone());
    step.mirrored = mirrored;
    ctx.enter(g, &[x, y], ConditionKind::PairMax, d, depth, "T5 entry")?;

    if !d.is_positive() {
        step.case = "d <= 0".into();
        let p = g.bfs_path(x, y, &[], &[]).ok_or_else(|| ctx.internal("T5 d <= 0", "no (x,y)-path"))?;
        step.ops.push(Rewrite::Literal(p));
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }

    if g.vertex_count() == 3 {
        step.case = "n = 3".into();
        let c = g.vertices().find(|&v| v != x && v != y).unwrap();
        step.ops.push(Rewrite::Literal(vec![x, c, y]));
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }

    let h = g.without(&[x]).unwrap();
    if h.is_two_connected() {
        step.case = "Case 1".into();
        let xp = heaviest_neighbor(g, x, Some(y)).ok_or_else(|| ctx.internal("T5 Case 1", "x has no neighbour but y"))?;
        step.x_prime = Some(xp);
        let rest = d - g.weight(x, xp).unwrap();
        let (_, child) = done(run(ctx, &h, xp, y, &rest, depth + 1, false)?, ctx, "T5 Case 1")?;
        step.children.push(child);
        step.ops = vec![Rewrite::Literal(vec![x, xp]), Rewrite::Child(0), Rewrite::Join];
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }

    let z = h.cut_vertices().map_err(|e| ctx.internal("T5 Case 2", e.to_string()))?[0];
    step.cut = Some(z);
    let comps = h.components_after_removal(&[z]);

    if y == z {
        step.case = "Case 2.1".into();
        // the side holding the lightest vertex may be light; the other side is all heavy
        let v0 = g
            .vertices()
            .filter(|&v| v != x && v != y)
            .min_by(|&a, &b| {
                let (da, db) = (g.weighted_degree(a, None).unwrap(), g.weighted_degree(b, None).unwrap());
                da.cmp(&db).then(a.cmp(&b))
            })
            .unwrap();
        let (h1, h2) = split_components(&comps, v0);
        step.h1 = h1;
        step.h2 = h2.clone();
        step.notes.push(format!("lightest vertex {v0} lies in H1"));
        let (g2, added) = side(g, &h2, x, y);
        if added {
            step.added_edges.push((x, y));
        }
        ctx.enter(&g2, &[x, y], ConditionKind::DiracMin, d, depth + 1, "T5 Case 2.1 G2")?;
        let p = ctx.heavy_xy(&g2, x, y, d, depth + 1)?;
        step.notes.push("heavy (x,y)-path of G2 from the exact oracle".into());
        step.ops.push(Rewrite::Literal(p));
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }

    let (h1, h2) = split_components(&comps, y);
    step.h1 = h1.clone();
    step.h2 = h2.clone();
    let (g1, add1) = side(g, &h1, x, z);
    let (g2, add2) = side(g, &h2, x, z);
    if add1 || add2 {
        step.added_edges.push((x, z));
    }
    let (o2, t2) = done(run(ctx, &g2, x, z, d, depth + 1, false)?, ctx, "T5 Case 2.2")?;
    step.children.push(t2);
    let tail = g1
        .bfs_path(z, y, &[x], &[])
        .ok_or_else(|| ctx.internal("T5 Case 2.2", "no (z,y)-path avoiding x in G1"))?;

    if o2.path().weight() >= d {
        step.case = "Case 2.2 heavy".into();
        step.ops = vec![Rewrite::Child(0), Rewrite::Literal(tail), Rewrite::Join];
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }
    let best = oracle::heaviest_xy_path(&g2, x, z, &ctx.opts.budget)?
        .ok_or_else(|| ctx.internal("T5 Case 2.2", "x and z disconnected in G2"))?;
    if &best.weight >= d {
        step.case = "Case 2.2 heavy".into();
        step.notes.push("recursion returned a light Hamilton path; heavy (x,z)-path of G2 from the exact oracle".into());
        step.ops = vec![Rewrite::Literal(best.path.into_vertices()), Rewrite::Literal(tail), Rewrite::Join];
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }
    if !matches!(o2, PathOutcome::HamiltonPath(_)) {
        return Err(ctx.internal("T5 Case 2.2", "light (x,z)-path of G2 is not Hamilton"));
    }

    if h2.len() >= 2 {
        step.case = "Case 2.2.1".into();
        let mut g1p = g1.clone();
        let gadget = g1p.add_gadget_vertex((x, z)).unwrap();
        step.gadgets.push(gadget);
        let (o1, t1) = done(run(ctx, &g1p, x, y, d, depth + 1, false)?, ctx, "T5 Case 2.2.1")?;
        step.children.push(t1);
        let p = o1.path().vertices();
        step.ops = vec![Rewrite::Child(1)];
        if p.get(1) == Some(&gadget) {
            step.notes.push("replace x x' z by the Hamilton (x,z)-path of G2".into());
            step.ops.extend([Rewrite::Child(0), Rewrite::Splice { from: 0, to: 2 }]);
        } else if add1 && p.get(1) == Some(&z) {
            step.notes.push("replace added edge xz by the Hamilton (x,z)-path of G2".into());
            step.ops.extend([Rewrite::Child(0), Rewrite::Splice { from: 0, to: 1 }]);
        } else if matches!(o1, PathOutcome::HamiltonPath(_)) {
            return Err(ctx.internal("T5 Case 2.2.1", "Hamilton path of G1' avoids x x' z"));
        }
        let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
        return Ok(Level::Done(out, step));
    }

    let xp = h2[0];
    step.x_prime = Some(xp);
    if g.degree(xp) != 2 || &g.weighted_degree(xp, None).unwrap() >= d {
        return Err(ctx.internal("T5 Case 2.2.2", format!("vertex {xp} should have degree 2 and be light")));
    }
    if mirrored {
        step.case = "Case 2.2.2 stop".into();
        step.notes.push(format!("low-degree neighbour {xp} found with cut vertex {z}"));
        return Ok(Level::Stop { low: xp, trace: step });
    }
    match run(ctx, g, y, x, d, depth + 1, true)? {
        Level::Done(_, t) => {
            step.case = "Case 2.2.2 mirrored".into();
            step.notes.push("the run with anchors swapped produced the path".into());
            step.children.push(t);
            step.ops = vec![Rewrite::Child(1), Rewrite::Reverse];
        }
        Level::Stop { low, trace, .. } => {
            step.children.push(trace);
            step.notes.push(format!("y' = {low}"));
            if low != z || g.degree(z) != 2 {
                return Err(ctx.internal(
                    "T5 Case 2.2.2",
                    format!("expected y' = z = {z} with degree 2, got y' = {low} (deg z = {})", g.degree(z)),
                ));
            }
            if h1.len() == 1 {
                step.case = "Case 2.2.2 H1 = {y}".into();
                step.ops = vec![Rewrite::Literal(vec![x, xp, z, y])];
            } else {
                step.case = "Case 2.2.2".into();
                let mut keep = h1.clone();
                keep.push(x);
                let mut g1p = g.induced_copy(&keep).unwrap();
                if g1p.add_edge_if_absent(x, y, Rational::from_integer(0.into()), true).unwrap() {
                    step.added_edges.push((x, y));
                }
                ctx.enter(&g1p, &[x, y], ConditionKind::DiracMin, d, depth + 1, "T5 Case 2.2.2 G1'")?;
                let p = ctx.heavy_xy(&g1p, x, y, d, depth + 1)?;
                step.notes.push("heavy (x,y)-path of G1' from the exact oracle".into());
                step.ops = vec![Rewrite::Literal(p)];
            }
        }
    }
    let out = settle_path(ctx, g, &mut step, x, Some(y), d)?;
    Ok(Level::Done(out, step))
}

/// `H1` is the component holding `anchor`; `H2` is everything else.
pub(crate) fn split_components(comps: &[Vec<Vertex>], anchor: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for c in comps {
        if c.contains(&anchor) {
            h1.extend_from_slice(c);
        } else {
            h2.extend_from_slice(c);
        }
    }
    h2.sort_unstable();
    (h1, h2)
}

pub(crate) fn done<O>(level: Level<O>, ctx: &Ctx, case: &str) -> Result<(O, TraceStep), ConstructError> {
    match level {
        Level::Done(o, t) => Ok((o, t)),
        Level::Stop { .. } => Err(ctx.internal(case, "unexpected early stop")),
    }
}
