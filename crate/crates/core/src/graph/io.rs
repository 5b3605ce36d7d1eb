//! Plain-text graph files.
//!
//! ```text
//! # optional comments
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use std::fmt::Write as _;

use super::{Edge, Graph};
use crate::ParseError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), ParseError> {
    let mut it = s.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(ParseError::new(line, format!("expected two integers, got {s:?}")));
    };
    let parse =
        |t: &str| t.parse::<usize>().map_err(|_| ParseError::new(line, format!("not a non-negative integer: {t:?}")));
    Ok((parse(a)?, parse(b)?))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return Err(ParseError::new(1, "missing header line \"n m\""));
    };
    let (n, m) =
        parse_pair(hline, header).map_err(|e| ParseError::new(hline, format!("malformed header: {}", e.message)))?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = hline;
    for (line, s) in lines {
        if edges.len() == m {
            return Err(ParseError::new(line, format!("more than the declared {m} edges")));
        }
        let (a, b) = parse_pair(line, s)?;
        if a == b {
            return Err(ParseError::new(line, format!("self-loop at vertex {a}")));
        }
        if a >= n || b >= n {
            return Err(ParseError::new(line, format!("vertex out of range in {a} {b} (n = {n})")));
        }
        let e = Edge::new(a, b);
        if !seen.insert(e) {
            return Err(ParseError::new(line, format!("duplicate edge {e}")));
        }
        edges.push((e.u, e.v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(ParseError::new(last_line, format!("header declares {m} edges but {} were given", edges.len())));
    }
    Ok(Graph::new(n, edges).expect("checked while parsing"))
}

/// Header line plus one line per edge, edges in lexicographic order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {}", e.u, e.v).unwrap();
    }
    out
}
