//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'
//! 4 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The header is `n m`; exactly `m` edge lines follow. Blank lines are
//! ignored. Emission writes edges sorted lexicographically with `u < v`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::{Graph, GraphError};

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn parse_pair(line_no: usize, line: &str, what: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(parse_err(line_no, format!("expected two integers ({what}), got {line:?}")));
    };
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("invalid integer {s:?}")))
    };
    Ok((num(a)?, num(b)?))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((header_line, header)) = lines.next() else {
        return Err(parse_err(1, "missing header line \"n m\""));
    };
    let (n, m) = parse_pair(header_line, header, "header \"n m\"")?;

    let mut seen = BTreeSet::new();
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        if seen.len() == m {
            return Err(parse_err(line_no, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(line_no, line, "edge \"u v\"")?;
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex id out of range in edge ({u}, {v}); n = {n}")));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line_no, format!("duplicate edge ({u}, {v})")));
        }
    }
    if seen.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} edges but {} were given", seen.len()),
        ));
    }
    Graph::new(n, seen)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.order(), g.size()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// One-line form `u v;u v;...`. The order is one more than the largest id.
pub fn parse_inline(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for (i, chunk) in text.split(';').map(str::trim).enumerate() {
        if chunk.is_empty() {
            continue;
        }
        edges.push(parse_pair(i + 1, chunk, "edge \"u v\"")?);
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
    Graph::new(n, edges)
}

pub fn emit_inline(g: &Graph) -> String {
    g.edges()
        .iter()
        .map(|(u, v)| format!("{u} {v}"))
        .collect::<Vec<_>>()
        .join(";")
}
