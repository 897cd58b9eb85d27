//! `x`-path of weight `>= d` or a Hamilton `x`-path, under the triple-max
//! condition outside `{x}`.

use num_traits::Signed;

use super::t5::{self, done, split_components};
use super::{heaviest_neighbor, settle_path, side, sum_degrees_at_least, Ctx, PathOutcome};
use crate::conditions::ConditionKind;
use crate::constructive::trace::{Procedure, Rewrite, TraceStep};
use crate::constructive::ConstructError;
use crate::graph::{Vertex, WeightedGraph};
use crate::rational::Rational;

pub(crate) fn run(
    ctx: &Ctx,
    g: &WeightedGraph,
    x: Vertex,
    d: &Rational,
    depth: usize,
) -> Result<(PathOutcome, TraceStep), ConstructError> {
    let mut step = TraceStep::new(Procedure::T8, depth, vec![x], g.vertex_count(), d.clone());
    ctx.enter(g, &[x], ConditionKind::TripleMax, d, depth, "T8 entry")?;

    if !d.is_positive() {
        step.case = "d <= 0".into();
        step.ops.push(Rewrite::Literal(vec![x]));
        let out = settle_path(ctx, g, &mut step, x, None, d)?;
        return Ok((out, step));
    }

    if g.vertex_count() == 3 {
        step.case = "n = 3".into();
        let others: Vec<Vertex> = g.vertices().filter(|&v| v != x).collect();
        let (a, b) = (others[0], others[1]);
        // both orders are Hamilton; keep the heavier
        let wa = g.weight(x, a).unwrap() + g.weight(a, b).unwrap();
        let wb = g.weight(x, b).unwrap() + g.weight(a, b).unwrap();
        let p = if wb > wa { vec![x, b, a] } else { vec![x, a, b] };
        step.ops.push(Rewrite::Literal(p));
        let out = settle_path(ctx, g, &mut step, x, None, d)?;
        return Ok((out, step));
    }

    let h = g.without(&[x]).unwrap();
    if h.is_two_connected() {
        step.case = "Case 1".into();
        let xp = heaviest_neighbor(g, x, None).unwrap();
        step.x_prime = Some(xp);
        let rest = d - g.weight(x, xp).unwrap();
        let (_, child) = run(ctx, &h, xp, &rest, depth + 1)?;
        step.children.push(child);
        step.ops = vec![Rewrite::Literal(vec![x, xp]), Rewrite::Child(0), Rewrite::Join];
        let out = settle_path(ctx, g, &mut step, x, None, d)?;
        return Ok((out, step));
    }

    let y = h.cut_vertices().map_err(|e| ctx.internal("T8 Case 2", e.to_string()))?[0];
    step.cut = Some(y);
    let comps = h.components_after_removal(&[y]);
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
            step.case = format!("Case 2 heavy side G{}", i + 1);
            ctx.enter(gi, &[x, y], ConditionKind::DiracMin, d, depth + 1, "T8 Case 2 heavy side")?;
            let p = ctx.heavy_xy(gi, x, y, d, depth + 1)?;
            step.notes.push(format!("heavy (x,y)-path of G{} from the exact oracle", i + 1));
            step.ops = vec![Rewrite::Literal(p)];
            let out = settle_path(ctx, g, &mut step, x, None, d)?;
            return Ok((out, step));
        }
    }

    let (o1, t1) = done(t5::run(ctx, &g1, x, y, d, depth + 1, false)?, ctx, "T8 Case 2")?;
    step.children.push(t1);
    if let PathOutcome::HeavyPath(_) = o1 {
        step.case = "Case 2 heavy in G1".into();
        step.ops = vec![Rewrite::Child(0)];
        let out = settle_path(ctx, g, &mut step, x, None, d)?;
        return Ok((out, step));
    }
    let (o2, t2) = done(t5::run(ctx, &g2, x, y, d, depth + 1, false)?, ctx, "T8 Case 2")?;
    step.children.push(t2);
    if let PathOutcome::HeavyPath(_) = o2 {
        step.case = "Case 2 heavy in G2".into();
        step.ops = vec![Rewrite::Child(1)];
        let out = settle_path(ctx, g, &mut step, x, None, d)?;
        return Ok((out, step));
    }

    step.case = "Case 2 Hamilton cycle".into();
    let p1 = o1.path().vertices();
    let p2 = o2.path().vertices();
    // cycle x p1 .. y .. p2 reversed back to x; drop the lighter edge at x
    let first = g.weight(x, p1[1]).unwrap();
    let last = g.weight(x, p2[1]).unwrap();
    step.ops = vec![Rewrite::Child(0), Rewrite::Child(1), Rewrite::Reverse, Rewrite::Join];
    if first < last {
        step.notes.push(format!("drop cycle edge {x}-{}", p1[1]));
        step.ops.push(Rewrite::Reverse);
    } else {
        step.notes.push(format!("drop cycle edge {x}-{}", p2[1]));
    }
    step.ops.push(Rewrite::TrimEnd(1));
    let out = settle_path(ctx, g, &mut step, x, None, d)?;
    Ok((out, step))
}
