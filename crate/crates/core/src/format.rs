//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! 4
//! 0 1 1
//! 1 2 3/2
//! 2 3 0.25
//! ```
//!
//! The first non-comment line is the vertex count `n` (vertices `0..n`); every
//! further line is `u v w` with `w` a non-negative integer, decimal or `p/q`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut graph: Option<WeightedGraph> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                if fields.len() != 1 {
                    return Err(fail(line, "expected the vertex count on its own line"));
                }
                let n: usize = fields[0]
                    .parse()
                    .map_err(|_| fail(line, format!("invalid vertex count `{}`", fields[0])))?;
                graph = Some(WeightedGraph::new(n));
            }
            Some(g) => {
                if fields.len() != 3 {
                    return Err(fail(line, "expected `u v w`"));
                }
                let endpoint = |s: &str| -> Result<usize, ParseError> {
                    s.parse().map_err(|_| fail(line, format!("invalid vertex id `{s}`")))
                };
                let u = endpoint(fields[0])?;
                let v = endpoint(fields[1])?;
                let w = parse_rational(fields[2]).map_err(|e| fail(line, e.to_string()))?;
                g.add_edge(u, v, w).map_err(|e| match e {
                    GraphError::MissingVertex(x) => fail(line, format!("vertex {x} out of range")),
                    GraphError::SelfLoop(x) => fail(line, format!("loop at vertex {x}")),
                    GraphError::DuplicateEdge(a, b) => fail(line, format!("duplicate edge {a}-{b}")),
                    GraphError::NegativeWeight(a, b) => fail(line, format!("negative weight on edge {a}-{b}")),
                    other => fail(line, other.to_string()),
                })?;
            }
        }
    }
    graph.ok_or_else(|| fail(last_line.max(1), "missing vertex count"))
}

/// Writes `g` in the text format. Ids are written as they are, so a graph
/// with removed vertices keeps them as isolated vertices.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.capacity()).unwrap();
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {}", format_rational(w)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_comments_and_rationals() {
        let g = parse_graph("# tri\n3\n0 1 1\n1 2 3/2\n\n# x\n0 2 0.25\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.weight(1, 2), Some(&ratio(3, 2)));
        assert_eq!(g.weight(2, 0), Some(&ratio(1, 4)));
    }

    #[test]
    fn reports_line_numbers() {
        let dup = parse_graph("3\n0 1 1\n1 0 2\n").unwrap_err();
        assert_eq!(dup.line, 3);
        assert!(dup.message.contains("duplicate"));
        let lp = parse_graph("# c\n3\n1 1 1\n").unwrap_err();
        assert_eq!(lp.line, 3);
        assert!(lp.message.contains("loop"));
        assert_eq!(parse_graph("3\n0 5 1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("3\n0 1 -1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("3\n0 1\n").unwrap_err().line, 2);
        assert!(parse_graph("# only\n").is_err());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let g = WeightedGraph::from_edges(4, [(0, 1, int(2)), (1, 3, ratio(7, 3)), (2, 3, int(0))]).unwrap();
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
