//! Canonical line-based standard input consumed by generated solvers.
//!
//! Layout: a `n m` header, one `u v [w]` line per edge in `(u, v)` order,
//! then the query lines. Tokens are single-space separated and every line
//! ends with `\n`. Node numbers are written with the graph's index base.

use std::fmt;

use super::{Edge, Graph, GraphError};

/// Task-specific query appended after the edge lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    None,
    Node(usize),
    Pair(usize, usize),
    /// Rendered as a count line followed by one pair per line.
    Pairs(Vec<(usize, usize)>),
}

/// Shape of the query expected when reading standard input back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryShape {
    None,
    Node,
    Pair,
    Pairs,
}

impl Query {
    fn nodes(&self) -> Vec<usize> {
        match self {
            Query::None => vec![],
            Query::Node(u) => vec![*u],
            Query::Pair(u, v) => vec![*u, *v],
            Query::Pairs(ps) => ps.iter().flat_map(|&(u, v)| [u, v]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardInput {
    text: String,
}

impl StandardInput {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

impl fmt::Display for StandardInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn render_standard_input(g: &Graph, query: &Query) -> Result<StandardInput, GraphError> {
    let n = g.node_count();
    if let Some(&node) = query.nodes().iter().find(|&&u| u >= n) {
        return Err(GraphError::QueryOutOfRange { node, node_count: n });
    }
    let b = g.index_base();
    let mut text = format!("{} {}\n", n, g.edge_count());
    for e in g.edges() {
        match e.weight {
            Some(w) => text.push_str(&format!("{} {} {}\n", e.u + b, e.v + b, w)),
            None => text.push_str(&format!("{} {}\n", e.u + b, e.v + b)),
        }
    }
    match query {
        Query::None => {}
        Query::Node(u) => text.push_str(&format!("{}\n", u + b)),
        Query::Pair(u, v) => text.push_str(&format!("{} {}\n", u + b, v + b)),
        Query::Pairs(ps) => {
            text.push_str(&format!("{}\n", ps.len()));
            for (u, v) in ps {
                text.push_str(&format!("{} {}\n", u + b, v + b));
            }
        }
    }
    Ok(StandardInput { text })
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_ints(&mut self, count: usize) -> Result<Vec<i64>, GraphError> {
        let (idx, line) = self.inner.next().ok_or(GraphError::StandardInput {
            line: 0,
            message: "unexpected end of input".into(),
        })?;
        let err = |message: String| GraphError::StandardInput { line: idx + 1, message };
        let values = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| err(format!("`{t}` is not an integer"))))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != count {
            return Err(err(format!("expected {count} integers, found {}", values.len())));
        }
        Ok(values)
    }
}

/// Reads text produced by [`render_standard_input`] back into a graph.
pub fn parse_standard_input(
    text: &str,
    directed: bool,
    weighted: bool,
    index_base: usize,
    shape: QueryShape,
) -> Result<(Graph, Query), GraphError> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let header = lines.next_ints(2)?;
    let to_count = |v: i64| usize::try_from(v).map_err(|_| GraphError::StandardInput {
        line: 1,
        message: format!("negative count {v}"),
    });
    let (n, m) = (to_count(header[0])?, to_count(header[1])?);
    let node = |v: i64| -> Result<usize, GraphError> {
        let idx = v - index_base as i64;
        if idx < 0 || idx as usize >= n {
            return Err(GraphError::NodeOutOfRange {
                node: v,
                low: index_base as i64,
                high: (n + index_base) as i64 - 1,
            });
        }
        Ok(idx as usize)
    };
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let vals = lines.next_ints(if weighted { 3 } else { 2 })?;
        edges.push(Edge { u: node(vals[0])?, v: node(vals[1])?, weight: vals.get(2).copied() });
    }
    let query = match shape {
        QueryShape::None => Query::None,
        QueryShape::Node => Query::Node(node(lines.next_ints(1)?[0])?),
        QueryShape::Pair => {
            let v = lines.next_ints(2)?;
            Query::Pair(node(v[0])?, node(v[1])?)
        }
        QueryShape::Pairs => {
            let q = to_count(lines.next_ints(1)?[0])?;
            let mut pairs = Vec::with_capacity(q);
            for _ in 0..q {
                let v = lines.next_ints(2)?;
                pairs.push((node(v[0])?, node(v[1])?));
            }
            Query::Pairs(pairs)
        }
    };
    let g = Graph::new(directed, n, edges)?.with_index_base(index_base);
    Ok((g, query))
}
