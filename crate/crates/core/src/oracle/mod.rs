//! Exact reference solvers for the benchmark task families.
//!
//! Every solver is deterministic: ties resolve to the lowest node index, and
//! neighbour lists are walked in ascending order. NP-hard searches enforce
//! the node-count bounds in [`bounds`] and fail loudly past them.

mod cliques;
mod connectivity;
mod cycles;
mod flow;
mod hamilton;
mod local;
mod matching;
mod mcs;
mod mst;
mod pagerank;
mod paths;
mod subgraph;
mod tsp;

pub use cliques::{exact_mis, exact_mvc, max_clique, max_clique_with_budget, SearchBudget};
pub use connectivity::{connectivity_query, ConnectivityQuery};
pub use cycles::{detect_cycle, topological_order};
pub use flow::max_flow;
pub use hamilton::hamilton_path;
pub use local::{local_query, LocalQuery};
pub use matching::{bipartite, BipartiteAnswer};
pub use mcs::max_common_subgraph;
pub use mst::{mst_weight, SpanningTree};
pub use pagerank::{pagerank, PageRankAnswer};
pub use paths::{shortest_path, PathAnswer};
pub use subgraph::{subgraph_match, MatchMode};
pub use tsp::{tsp_held_karp, TourAnswer};

use std::fmt;

use thiserror::Error;

/// Exact-search size limits.
pub mod bounds {
    pub const SUBGRAPH_HOST: usize = 16;
    pub const CLIQUE_FAMILY: usize = 40;
    pub const MCS_SMALLER: usize = 10;
    pub const TSP: usize = 20;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("node {node} is out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("{op} requires a {required} graph")]
    ModeMismatch { op: &'static str, required: &'static str },
    #[error("{op} is not defined on a disconnected graph (distance is infinite)")]
    Disconnected { op: &'static str },
    #[error("negative weight {weight} on edge ({u}, {v})")]
    NegativeWeight { u: usize, v: usize, weight: i64 },
    #[error("source and sink must differ (both {0})")]
    SameEndpoints(usize),
    #[error("{op} supports at most {limit} nodes, got {got}")]
    SizeBound { op: &'static str, limit: usize, got: usize },
    #[error("{op} exceeded its search budget of {budget} nodes")]
    BudgetExceeded { op: &'static str, budget: u64 },
    #[error("{op} needs a non-empty graph")]
    EmptyGraph { op: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A witness attached to an answer.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Path(Vec<usize>),
    Edges(Vec<(usize, usize)>),
    /// `(pattern node, host node)` pairs.
    Mapping(Vec<(usize, usize)>),
}

/// Uniform answer wrapper used by the generator and the report code.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleAnswer {
    Boolean { value: bool, witness: Option<Witness> },
    Integer(i64),
    Ratio { numer: u64, denom: u64 },
    Node { node: usize, scores: Vec<f64> },
    NodeSet(Vec<usize>),
    /// Disjoint sets, each ascending, ordered by smallest member.
    Partition(Vec<Vec<usize>>),
    /// `None` when no valid sequence exists (e.g. a cyclic graph).
    NodeSequence(Option<Vec<usize>>),
    ValueWithWitness { value: i64, witness: Option<Witness> },
}

impl OracleAnswer {
    /// Six-place decimal for ratios.
    pub fn ratio_decimal(numer: u64, denom: u64) -> String {
        format!("{:.6}", numer as f64 / denom as f64)
    }
}

impl fmt::Display for OracleAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match self {
            OracleAnswer::Boolean { value, .. } => f.write_str(if *value { "Yes" } else { "No" }),
            OracleAnswer::Integer(v) => write!(f, "{v}"),
            OracleAnswer::Ratio { numer, denom } => f.write_str(&Self::ratio_decimal(*numer, *denom)),
            OracleAnswer::Node { node, .. } => write!(f, "{node}"),
            OracleAnswer::NodeSet(s) => f.write_str(&join(s)),
            OracleAnswer::Partition(parts) => {
                f.write_str(&parts.iter().map(|p| join(p)).collect::<Vec<_>>().join("\n"))
            }
            OracleAnswer::NodeSequence(Some(s)) => f.write_str(&join(s)),
            OracleAnswer::NodeSequence(None) => f.write_str("None"),
            OracleAnswer::ValueWithWitness { value, .. } => write!(f, "{value}"),
        }
    }
}

pub(crate) fn check_node(g: &crate::Graph, node: usize) -> Result<(), OracleError> {
    if node >= g.node_count() {
        return Err(OracleError::NodeOutOfRange { node, node_count: g.node_count() });
    }
    Ok(())
}

pub(crate) fn require_undirected(g: &crate::Graph, op: &'static str) -> Result<(), OracleError> {
    if g.is_directed() {
        return Err(OracleError::ModeMismatch { op, required: "undirected" });
    }
    Ok(())
}

pub(crate) fn require_directed(g: &crate::Graph, op: &'static str) -> Result<(), OracleError> {
    if !g.is_directed() {
        return Err(OracleError::ModeMismatch { op, required: "directed" });
    }
    Ok(())
}
