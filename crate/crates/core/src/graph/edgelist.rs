//! Plain edge-list text: a header line `n m`, then one `u v` line per edge.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing `n m` header".into()))?;
    let [n, m] = parse_pair(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let [u, v] = parse_pair(line, idx + 1)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::EdgeList(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(line: &str, line_no: usize) -> Result<[usize; 2]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || {
        Error::EdgeList(format!(
            "line {line_no}: expected two integers, got `{line}`"
        ))
    };
    match fields.as_slice() {
        [a, b] => Ok([a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?]),
        _ => Err(bad()),
    }
}
