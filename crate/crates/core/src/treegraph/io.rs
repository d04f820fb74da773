//! Plain-text edge lists and Graphviz export.
//!
//! Edge-list format: the first non-comment line is the vertex count, then one
//! `u v` pair per line. A trailing `*` marks the distinguished edge. Lines
//! starting with `#` are ignored.

use std::fmt::Write;

use super::{GraphError, MarkedGraph, Multigraph};

pub fn to_edge_list(g: &Multigraph, marked: Option<usize>) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let star = if Some(i) == marked { " *" } else { "" };
        let _ = writeln!(out, "{u} {v}{star}");
    }
    out
}

/// Parses an edge list; returns the graph and the marked edge index, if any.
pub fn parse_edge_list(text: &str) -> Result<(Multigraph, Option<usize>), GraphError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut marked = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| GraphError::Parse { line: line_no, msg };
        if n.is_none() {
            n = Some(line.parse::<usize>().map_err(|e| err(format!("vertex count: {e}")))?);
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut vertex = |name: &str| -> Result<usize, GraphError> {
            parts
                .next()
                .ok_or_else(|| err(format!("missing {name} endpoint")))?
                .parse::<usize>()
                .map_err(|e| err(format!("{name} endpoint: {e}")))
        };
        let u = vertex("first")?;
        let v = vertex("second")?;
        match parts.next() {
            None => {}
            Some("*") if marked.is_none() => marked = Some(edges.len()),
            Some("*") => return Err(err("more than one marked edge".into())),
            Some(other) => return Err(err(format!("unexpected token `{other}`"))),
        }
        if let Some(extra) = parts.next() {
            return Err(err(format!("unexpected token `{extra}`")));
        }
        edges.push((u, v));
    }
    let n = n.ok_or(GraphError::Parse { line: 0, msg: "empty input".into() })?;
    Ok((Multigraph::new(n, edges)?, marked))
}

/// Graphviz `graph` source; the marked edge, if any, is drawn bold red.
pub fn to_dot(g: &Multigraph, marked: Option<usize>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if Some(i) == marked {
            let _ = writeln!(out, "  {u} -- {v} [color=red, penwidth=2];");
        } else {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}

impl MarkedGraph {
    pub fn to_edge_list(&self) -> String {
        to_edge_list(self.graph(), Some(self.marked_index()))
    }

    pub fn to_dot(&self) -> String {
        to_dot(self.graph(), Some(self.marked_index()))
    }
}
