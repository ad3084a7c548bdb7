//! Edge-list text format and DOT export.
//!
//! The edge-list format is one `u v` pair per line, whitespace separated,
//! with `#` starting a comment that runs to the end of the line. Node ids
//! are non-negative integers; the loaded graph contains nodes `0..=max id`.

use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Parses an edge-list text into a graph.
pub fn load_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut edges: Vec<(usize, u32, u32)> = Vec::new();
    let mut max_id: u32 = 0;
    let mut any_node = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(ParseError {
                    line: line_no,
                    message: format!("expected two node ids, got {line:?}"),
                })
            }
        };
        let parse = |tok: &str| {
            tok.parse::<u32>().map_err(|_| ParseError {
                line: line_no,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let (u, v) = (parse(u)?, parse(v)?);
        max_id = max_id.max(u).max(v);
        any_node = true;
        edges.push((line_no, u, v));
    }
    let nodes = if any_node { max_id as usize + 1 } else { 0 };
    let mut g = Graph::with_nodes(nodes);
    for (line_no, u, v) in edges {
        g.add_edge(NodeId(u), NodeId(v)).map_err(|e| ParseError {
            line: line_no,
            message: e.to_string(),
        })?;
    }
    Ok(g)
}

/// Serializes the edge set, one `u v` line per edge with `u < v`.
pub fn save_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Emits the graph in DOT syntax. Active nodes (members of a triangle) and
/// edges joining two active nodes carry `active=true` and are drawn dark;
/// the rest of the graph stays light grey.
pub fn export_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    for i in g.nodes() {
        if g.is_active(i) {
            out.push_str(&format!(
                "  {i} [active=true, style=filled, fillcolor=black, fontcolor=white];\n"
            ));
        } else {
            out.push_str(&format!(
                "  {i} [active=false, style=filled, fillcolor=lightgrey];\n"
            ));
        }
    }
    for (u, v) in g.edges() {
        if g.is_active(u) && g.is_active(v) {
            out.push_str(&format!("  {u} -- {v} [active=true, color=grey25];\n"));
        } else {
            out.push_str(&format!("  {u} -- {v} [active=false, color=grey80];\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn loads_a_triangle() {
        let g = load_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.total_triangles(), 1);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = load_edge_list("# header\n\n0 1  # an edge\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn reports_malformed_lines_with_numbers() {
        let err = load_edge_list("0 1\nnot an edge here\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = load_edge_list("0 1\n2 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("self-loop"));
        let err = load_edge_list("0 1\n1 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("already present"));
        let err = load_edge_list("0 -3\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn diamond_round_trips() {
        let g = Graph::diamond();
        let text = save_edge_list(&g);
        let back = load_edge_list(&text).unwrap();
        let original: Vec<_> = g.edges().collect();
        let reloaded: Vec<_> = back.edges().collect();
        assert_eq!(original, reloaded);
    }

    #[test]
    fn dot_marks_active_parts_of_the_diamond() {
        let dot = export_dot(&Graph::diamond());
        let active_nodes = dot
            .lines()
            .filter(|l| l.contains("active=true") && !l.contains("--"))
            .count();
        let active_edges = dot
            .lines()
            .filter(|l| l.contains("active=true") && l.contains("--"))
            .count();
        assert_eq!(active_nodes, 4);
        assert_eq!(active_edges, 5);
    }

    #[test]
    fn dot_separates_inactive_parts() {
        let mut g = Graph::diamond();
        let e = g.add_node();
        let f = g.add_node();
        g.add_edge(e, f).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.lines().filter(|l| l.contains("active=false")).count(), 3);
    }

    proptest! {
        #[test]
        fn edge_list_round_trip_preserves_edges(
            n in 2usize..=15,
            script in prop::collection::vec((0u32..15, 0u32..15), 1..40),
        ) {
            let mut g = Graph::with_nodes(n);
            for (u, v) in script {
                if (u as usize) < n && (v as usize) < n {
                    let _ = g.add_edge(NodeId(u), NodeId(v));
                }
            }
            let reloaded = load_edge_list(&save_edge_list(&g)).unwrap();
            let a: Vec<_> = g.edges().collect();
            let b: Vec<_> = reloaded.edges().collect();
            prop_assert_eq!(a, b);
        }
    }
}
