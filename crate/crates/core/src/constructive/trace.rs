//! Recursion trees of constructive runs and the rewrite programs that turn
//! sub-witnesses into a level's witness.

use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::Vertex;
use crate::rational::{format_rational, Rational};

/// One instruction of a level's rewrite program. The program runs on a stack
/// of vertex sequences; whatever is left on the stack is the level's witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Rewrite {
    /// Push every path of child `i`'s witness, in order.
    Child(usize),
    /// Push one path of child `i`'s witness.
    ChildPath(usize, usize),
    Literal(Vec<Vertex>),
    Reverse,
    /// Pop `b`, pop `a`, push `a` followed by `b` without its first vertex
    /// (`a` must end where `b` starts).
    Join,
    /// Pop `r`, pop `p`, push `p[..from] ++ r ++ p[to + 1..]`.
    Splice { from: usize, to: usize },
    /// Pop `p`, push `p[..=at]` and then `p[at + 1..]`.
    SplitAfter(usize),
    TrimStart(usize),
    TrimEnd(usize),
    Append(Vertex),
    Swap,
    Drop,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rewrite `{op}` failed: {reason}")]
pub struct RewriteError {
    pub op: String,
    pub reason: String,
}

fn fail(op: &Rewrite, reason: impl Into<String>) -> RewriteError {
    RewriteError { op: format!("{op:?}"), reason: reason.into() }
}

/// Runs `ops` against the children's witnesses.
pub fn apply(ops: &[Rewrite], children: &[Vec<Vec<Vertex>>]) -> Result<Vec<Vec<Vertex>>, RewriteError> {
    let mut stack: Vec<Vec<Vertex>> = Vec::new();
    for op in ops {
        let pop = |stack: &mut Vec<Vec<Vertex>>| stack.pop().ok_or_else(|| fail(op, "stack is empty"));
        match op {
            Rewrite::Child(i) => {
                let w = children.get(*i).ok_or_else(|| fail(op, "no such child"))?;
                stack.extend(w.iter().cloned());
            }
            Rewrite::ChildPath(i, j) => {
                let p = children.get(*i).and_then(|w| w.get(*j)).ok_or_else(|| fail(op, "no such child path"))?;
                stack.push(p.clone());
            }
            Rewrite::Literal(p) => stack.push(p.clone()),
            Rewrite::Reverse => {
                let mut p = pop(&mut stack)?;
                p.reverse();
                stack.push(p);
            }
            Rewrite::Join => {
                let b = pop(&mut stack)?;
                let mut a = pop(&mut stack)?;
                if a.last() != b.first() || a.is_empty() {
                    return Err(fail(op, format!("{a:?} does not end where {b:?} starts")));
                }
                a.extend_from_slice(&b[1..]);
                stack.push(a);
            }
            Rewrite::Splice { from, to } => {
                let r = pop(&mut stack)?;
                let p = pop(&mut stack)?;
                if from > to || *to >= p.len() {
                    return Err(fail(op, format!("range out of bounds for {p:?}")));
                }
                let mut out = p[..*from].to_vec();
                out.extend_from_slice(&r);
                out.extend_from_slice(&p[to + 1..]);
                stack.push(out);
            }
            Rewrite::SplitAfter(at) => {
                let p = pop(&mut stack)?;
                if at + 1 >= p.len() {
                    return Err(fail(op, format!("cannot split {p:?}")));
                }
                stack.push(p[..=*at].to_vec());
                stack.push(p[at + 1..].to_vec());
            }
            Rewrite::TrimStart(k) | Rewrite::TrimEnd(k) => {
                let mut p = pop(&mut stack)?;
                if *k >= p.len() {
                    return Err(fail(op, format!("cannot trim {k} from {p:?}")));
                }
                if matches!(op, Rewrite::TrimStart(_)) {
                    p.drain(..*k);
                } else {
                    p.truncate(p.len() - k);
                }
                stack.push(p);
            }
            Rewrite::Append(v) => {
                let mut p = pop(&mut stack)?;
                p.push(*v);
                stack.push(p);
            }
            Rewrite::Swap => {
                let b = pop(&mut stack)?;
                let a = pop(&mut stack)?;
                stack.push(b);
                stack.push(a);
            }
            Rewrite::Drop => {
                pop(&mut stack)?;
            }
        }
    }
    Ok(stack)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Procedure {
    T5,
    T8,
    T10,
}

impl Procedure {
    pub fn name(self) -> &'static str {
        match self {
            Procedure::T5 => "T5",
            Procedure::T8 => "T8",
            Procedure::T10 => "T10",
        }
    }
}

/// One level of a constructive run.
#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub procedure: Procedure,
    /// Set on the run that re-derives a low-degree neighbour of `y` with the
    /// anchors swapped.
    pub mirrored: bool,
    pub anchors: Vec<Vertex>,
    pub vertices: usize,
    #[serde(serialize_with = "crate::rational::serde_rational::serialize")]
    pub d: Rational,
    pub case: String,
    pub x_prime: Option<Vertex>,
    pub cut: Option<Vertex>,
    pub h1: Vec<Vertex>,
    pub h2: Vec<Vertex>,
    pub added_edges: Vec<(Vertex, Vertex)>,
    pub gadgets: Vec<Vertex>,
    pub notes: Vec<String>,
    pub children: Vec<TraceStep>,
    pub ops: Vec<Rewrite>,
    pub witness: Vec<Vec<Vertex>>,
    pub outcome: String,
}

pub type ConstructionTrace = TraceStep;

impl TraceStep {
    pub(crate) fn new(procedure: Procedure, depth: usize, anchors: Vec<Vertex>, vertices: usize, d: Rational) -> Self {
        TraceStep {
            depth,
            procedure,
            mirrored: false,
            anchors,
            vertices,
            d,
            case: String::new(),
            x_prime: None,
            cut: None,
            h1: Vec::new(),
            h2: Vec::new(),
            added_edges: Vec::new(),
            gadgets: Vec::new(),
            notes: Vec::new(),
            children: Vec::new(),
            ops: Vec::new(),
            witness: Vec::new(),
            outcome: String::new(),
        }
    }

    /// Recomputes this step's witness from the leaves up.
    pub fn replay(&self) -> Result<Vec<Vec<Vertex>>, RewriteError> {
        let children = self.children.iter().map(|c| c.replay()).collect::<Result<Vec<_>, _>>()?;
        apply(&self.ops, &children)
    }

    /// True when replaying every level reproduces every recorded witness.
    pub fn replay_matches(&self) -> bool {
        self.children.iter().all(|c| c.replay_matches())
            && self.replay().map_or(false, |w| w == self.witness)
    }

    pub fn max_depth(&self) -> usize {
        self.children.iter().map(|c| c.max_depth()).max().unwrap_or(self.depth).max(self.depth)
    }

    pub fn step_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.step_count()).sum::<usize>()
    }

    /// Every `(procedure, case)` label in pre-order.
    pub fn case_labels(&self) -> Vec<String> {
        let mut out = vec![format!("{} {}", self.procedure.name(), self.case)];
        for c in &self.children {
            out.extend(c.case_labels());
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        let anchors: Vec<String> = self.anchors.iter().map(|a| a.to_string()).collect();
        let _ = write!(
            out,
            "{pad}{}{} [{}] n={} d={}: {}",
            self.procedure.name(),
            if self.mirrored { " (mirrored)" } else { "" },
            anchors.join(","),
            self.vertices,
            format_rational(&self.d),
            self.case
        );
        if let Some(v) = self.x_prime {
            let _ = write!(out, " x'={v}");
        }
        if let Some(z) = self.cut {
            let _ = write!(out, " z={z}");
        }
        out.push('\n');
        if !self.h1.is_empty() || !self.h2.is_empty() {
            let _ = writeln!(out, "{pad}  H1={:?} H2={:?}", self.h1, self.h2);
        }
        if !self.added_edges.is_empty() {
            let _ = writeln!(out, "{pad}  added {:?}", self.added_edges);
        }
        if !self.gadgets.is_empty() {
            let _ = writeln!(out, "{pad}  gadget {:?}", self.gadgets);
        }
        for note in &self.notes {
            let _ = writeln!(out, "{pad}  - {note}");
        }
        for c in &self.children {
            c.write_text(out, indent + 1);
        }
        let paths: Vec<String> = self
            .witness
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(out, "{pad}  => {} [{}]", self.outcome, paths.join(" | "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn program_semantics() {
        let children = vec![vec![vec![0, 5, 3]], vec![vec![3, 4, 1]]];
        let joined = apply(&[Rewrite::Child(0), Rewrite::Child(1), Rewrite::Join], &children).unwrap();
        assert_eq!(joined, vec![vec![0, 5, 3, 4, 1]]);
        let spliced = apply(
            &[Rewrite::Literal(vec![0, 9, 3, 1]), Rewrite::Literal(vec![0, 7, 8, 3]), Rewrite::Splice { from: 0, to: 2 }],
            &[],
        )
        .unwrap();
        assert_eq!(spliced, vec![vec![0, 7, 8, 3, 1]]);
        let split = apply(&[Rewrite::ChildPath(0, 0), Rewrite::SplitAfter(0), Rewrite::Reverse], &children).unwrap();
        assert_eq!(split, vec![vec![0], vec![3, 5]]);
        assert!(apply(&[Rewrite::Join], &children).is_err());
        assert!(apply(&[Rewrite::Literal(vec![1]), Rewrite::TrimEnd(1)], &[]).is_err());
    }
}
