//! Embedding files.
//!
//! ```text
//! spine: 0 3 1 2
//! page 0: 0-1 1-2
//! page 1: 0-2
//! ```

use std::fmt::Write as _;

use super::{LinearEmbedding, PagePartition, SpineOrder};
use crate::graph::{Edge, Graph};
use crate::ParseError;

fn parse_spine_tokens(line: usize, rest: &str, n: usize) -> Result<SpineOrder, ParseError> {
    let mut order = Vec::with_capacity(n);
    for tok in rest.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| ParseError::new(line, format!("bad spine entry {tok:?}")))?;
        order.push(v);
    }
    if order.len() != n {
        return Err(ParseError::new(line, format!("spine lists {} vertices, graph has {n}", order.len())));
    }
    SpineOrder::new(order).map_err(|e| ParseError::new(line, e.to_string()))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads only the `spine:` line of a file (page lines are ignored).
pub fn parse_spine(text: &str, n: usize) -> Result<SpineOrder, ParseError> {
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("spine:") {
            return parse_spine_tokens(line, rest, n);
        }
    }
    Err(ParseError::new(1, "missing \"spine:\" line"))
}

pub fn parse_embedding(text: &str, graph: &Graph) -> Result<LinearEmbedding, ParseError> {
    let mut lines = content_lines(text);
    let Some((sline, first)) = lines.next() else {
        return Err(ParseError::new(1, "missing \"spine:\" line"));
    };
    let Some(rest) = first.strip_prefix("spine:") else {
        return Err(ParseError::new(sline, "first line must start with \"spine:\""));
    };
    let spine = parse_spine_tokens(sline, rest, graph.n())?;

    let mut labels = vec![usize::MAX; graph.m()];
    let mut last_line = sline;
    for (pages, (line, l)) in lines.enumerate() {
        last_line = line;
        let Some(rest) = l.strip_prefix("page") else {
            return Err(ParseError::new(line, format!("expected \"page k:\", got {l:?}")));
        };
        let Some((id, edges)) = rest.split_once(':') else {
            return Err(ParseError::new(line, "missing ':' after page id"));
        };
        let id: usize = id.trim().parse().map_err(|_| ParseError::new(line, format!("bad page id {:?}", id.trim())))?;
        if id != pages {
            return Err(ParseError::new(line, format!("expected page {pages}, got page {id}")));
        }
        let mut count = 0;
        for tok in edges.split_whitespace() {
            let (a, b) = tok
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| ParseError::new(line, format!("bad edge token {tok:?}")))?;
            let idx = if a == b { None } else { graph.edge_id(a, b) };
            let Some(idx) = idx else {
                return Err(ParseError::new(line, format!("edge {a}-{b} is not in the graph")));
            };
            if labels[idx] != usize::MAX {
                return Err(ParseError::new(line, format!("edge {} assigned more than once", graph.edge(idx))));
            }
            labels[idx] = id;
            count += 1;
        }
        if count == 0 {
            return Err(ParseError::new(line, format!("page {id} is empty")));
        }
    }
    if let Some(idx) = labels.iter().position(|&l| l == usize::MAX) {
        return Err(ParseError::new(last_line, format!("edge {} unassigned", graph.edge(idx))));
    }
    let pages = PagePartition::new(labels).expect("page ids checked contiguous");
    Ok(LinearEmbedding::new(graph.clone(), spine, pages).expect("shapes checked"))
}

pub fn serialize_embedding(emb: &LinearEmbedding) -> String {
    let mut out = String::from("spine:");
    for v in emb.spine().order() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    for (p, edges) in emb.page_edges().iter().enumerate() {
        write!(out, "page {p}:").unwrap();
        for Edge { u, v } in edges {
            write!(out, " {u}-{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_path};
    use proptest::prelude::*;

    #[test]
    fn parses_path_embedding() {
        let emb = parse_embedding("spine: 0 1 2\npage 0: 0-1 1-2", &gen_path(3)).unwrap();
        assert_eq!(emb.page_count(), 1);
        assert_eq!(serialize_embedding(&emb), "spine: 0 1 2\npage 0: 0-1 1-2\n");
    }

    #[test]
    fn reports_unassigned_edge() {
        let g = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let e = parse_embedding("spine: 0 1 2\npage 0: 0-1 1-2\n", &g).unwrap_err();
        assert!(e.message.contains("edge 0-2 unassigned"), "{e}");
    }

    #[test]
    fn rejects_bad_spines_and_pages() {
        let g = gen_path(3);
        assert!(parse_embedding("spine: 0 0 2\npage 0: 0-1 1-2", &g).is_err());
        assert!(parse_embedding("spine: 0 1\npage 0: 0-1 1-2", &g).is_err());
        assert!(parse_embedding("spine: 0 1 2\npage 1: 0-1 1-2", &g).is_err());
        assert!(parse_embedding("spine: 0 1 2\npage 0: 0-1 0-2 1-2", &g).is_err());
        assert!(parse_embedding("spine: 0 1 2\npage 0: 0-1 1-0 1-2", &g).is_err());
        assert!(parse_embedding("spine: 0 1 2\npage 0: 0-1\npage 1:\npage 2: 1-2", &g).is_err());
        assert!(parse_embedding("page 0: 0-1 1-2", &g).is_err());
        let e = parse_embedding("# header\nspine: 0 1 2\npage 0: 0-1 x\n", &g).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn spine_only() {
        assert_eq!(parse_spine("# c\nspine: 2 0 1\n", 3).unwrap().order(), &[2, 0, 1]);
        assert!(parse_spine("page 0: 0-1", 3).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
                      labels in proptest::collection::vec(0usize..4, 15)) {
            let g = gen_complete(6);
            let emb = LinearEmbedding::new(g.clone(), SpineOrder::new(perm).unwrap(), PagePartition::normalized(&labels)).unwrap();
            let text = serialize_embedding(&emb);
            prop_assert_eq!(parse_embedding(&text, &g).unwrap(), emb);
        }
    }
}
