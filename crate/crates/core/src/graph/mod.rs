//! Graph data model and the text formats graphs travel in.
//!
//! A [`Graph`] is immutable once built. Undirected edges are stored with
//! `u <= v`, duplicate pairs collapse to the lightest copy and the edge list
//! is sorted by `(u, v)`. Node indices are always 0-based internally; the
//! numbering used by the source text is kept as [`Graph::index_base`] so the
//! graph renders back the way it was written.

mod formulation;
mod parse;
mod stdin;
mod text;

pub use formulation::{canonical_formulation_hash, CacheKey, ProblemFormulation};
pub use parse::{normalize_label, parse_graph_text};
pub use stdin::{parse_standard_input, render_standard_input, Query, QueryShape, StandardInput};
pub use text::{render_edge_tuples, render_node_range};

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{node_count}")]
    EndpointOutOfRange { u: usize, v: usize, node_count: usize },
    #[error("node {node} is outside the declared range {low}..={high}")]
    NodeOutOfRange { node: i64, low: i64, high: i64 },
    #[error("self-loop on node {0} is not supported")]
    SelfLoop(usize),
    #[error("edges mix weighted and unweighted tuples")]
    MixedWeights,
    #[error("malformed tuple `{tuple}`: expected {expected} components")]
    MalformedTuple { tuple: String, expected: usize },
    #[error("invalid node range {low} to {high}")]
    InvalidRange { low: i64, high: i64 },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("empty node name")]
    EmptyLabel,
    #[error("query references node {node} but the graph has {node_count} nodes")]
    QueryOutOfRange { node: usize, node_count: usize },
    #[error("standard input line {line}: {message}")]
    StandardInput { line: usize, message: String },
    #[error("invalid formulation: {0}")]
    InvalidFormulation(String),
}

/// One edge. `weight` is `None` for unweighted graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Option<i64>,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Self { u, v, weight: None }
    }

    pub fn weighted(u: usize, v: usize, weight: i64) -> Self {
        Self { u, v, weight: Some(weight) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    node_count: usize,
    labels: Option<Vec<String>>,
    edges: Vec<Edge>,
    index_base: usize,
    // Sorted by neighbour index. Unweighted edges carry weight 1.
    out_adj: Vec<Vec<(usize, i64)>>,
    in_adj: Vec<Vec<(usize, i64)>>,
}

impl Graph {
    /// Builds and canonicalises a graph.
    pub fn new(
        directed: bool,
        node_count: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        let weighted = edges.first().is_some_and(|e| e.weight.is_some());
        for e in &mut edges {
            if e.weight.is_some() != weighted {
                return Err(GraphError::MixedWeights);
            }
            if e.u >= node_count || e.v >= node_count {
                return Err(GraphError::EndpointOutOfRange { u: e.u, v: e.v, node_count });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            if !directed && e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        // Sorting on (u, v, weight) puts the lightest duplicate first.
        edges.sort();
        edges.dedup_by(|later, first| later.u == first.u && later.v == first.v);

        let mut out_adj = vec![Vec::new(); node_count];
        let mut in_adj = vec![Vec::new(); node_count];
        for e in &edges {
            let w = e.weight.unwrap_or(1);
            out_adj[e.u].push((e.v, w));
            if directed {
                in_adj[e.v].push((e.u, w));
            } else {
                out_adj[e.v].push((e.u, w));
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        if !directed {
            in_adj = out_adj.clone();
        }
        Ok(Self {
            directed,
            node_count,
            labels: None,
            edges,
            index_base: 0,
            out_adj,
            in_adj,
        })
    }

    pub fn from_pairs(
        directed: bool,
        node_count: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        Self::new(directed, node_count, pairs.iter().map(|&(u, v)| Edge::new(u, v)))
    }

    pub fn from_triples(
        directed: bool,
        node_count: usize,
        triples: &[(usize, usize, i64)],
    ) -> Result<Self, GraphError> {
        Self::new(
            directed,
            node_count,
            triples.iter().map(|&(u, v, w)| Edge::weighted(u, v, w)),
        )
    }

    /// Attaches node names. Names must already be normalised and unique.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.node_count {
            return Err(GraphError::LabelCount { expected: self.node_count, got: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_index_base(mut self, base: usize) -> Self {
        self.index_base = base;
        self
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn index_base(&self) -> usize {
        self.index_base
    }

    pub fn is_weighted(&self) -> bool {
        self.edges.first().is_some_and(|e| e.weight.is_some())
    }

    /// Successors (directed) or neighbours (undirected), ascending.
    pub fn neighbors(&self, u: usize) -> &[(usize, i64)] {
        &self.out_adj[u]
    }

    /// Predecessors (directed) or neighbours (undirected), ascending.
    pub fn in_neighbors(&self, u: usize) -> &[(usize, i64)] {
        &self.in_adj[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    /// Weight of the arc `u -> v` (either direction when undirected).
    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        let list = self.out_adj.get(u)?;
        list.binary_search_by_key(&v, |&(n, _)| n).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Same graph with every edge read as undirected.
    pub fn to_undirected(&self) -> Graph {
        let g = Graph::new(false, self.node_count, self.edges.iter().copied())
            .expect("edges of a valid graph stay valid");
        Graph { labels: self.labels.clone(), index_base: self.index_base, ..g }
    }
}
