use std::collections::BTreeSet;

use super::{check_node, require_directed, require_undirected, OracleAnswer, OracleError};
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalQuery {
    NodeCount,
    EdgeCount,
    EdgeExistence(usize, usize),
    /// Out-degree on directed graphs.
    Degree(usize),
    /// Successors on directed graphs.
    Neighbors(usize),
    /// Nodes sharing an edge with the node in either direction.
    ConnectedNodes(usize),
    CommonNeighbors(usize, usize),
    Jaccard(usize, usize),
    TriangleCount,
    /// Direct predecessors; directed graphs only.
    Predecessors(usize),
}

fn successor_set(g: &Graph, u: usize) -> BTreeSet<usize> {
    g.neighbors(u).iter().map(|&(v, _)| v).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn local_query(g: &Graph, q: LocalQuery) -> Result<OracleAnswer, OracleError> {
    use LocalQuery::*;
    match q {
        NodeCount => Ok(OracleAnswer::Integer(g.node_count() as i64)),
        EdgeCount => Ok(OracleAnswer::Integer(g.edge_count() as i64)),
        EdgeExistence(u, v) => {
            check_node(g, u)?;
            check_node(g, v)?;
            Ok(OracleAnswer::Boolean { value: g.has_edge(u, v), witness: None })
        }
        Degree(u) => {
            check_node(g, u)?;
            Ok(OracleAnswer::Integer(g.out_degree(u) as i64))
        }
        Neighbors(u) => {
            check_node(g, u)?;
            Ok(OracleAnswer::NodeSet(successor_set(g, u).into_iter().collect()))
        }
        ConnectedNodes(u) => {
            check_node(g, u)?;
            let mut set = successor_set(g, u);
            set.extend(g.in_neighbors(u).iter().map(|&(v, _)| v));
            Ok(OracleAnswer::NodeSet(set.into_iter().collect()))
        }
        CommonNeighbors(u, v) => {
            check_node(g, u)?;
            check_node(g, v)?;
            let common = successor_set(g, u).intersection(&successor_set(g, v)).copied().collect();
            Ok(OracleAnswer::NodeSet(common))
        }
        Jaccard(u, v) => {
            check_node(g, u)?;
            check_node(g, v)?;
            let (a, b) = (successor_set(g, u), successor_set(g, v));
            let inter = a.intersection(&b).count() as u64;
            let union = a.union(&b).count() as u64;
            if union == 0 {
                return Ok(OracleAnswer::Ratio { numer: 0, denom: 1 });
            }
            let d = gcd(inter, union);
            Ok(OracleAnswer::Ratio { numer: inter / d, denom: union / d })
        }
        TriangleCount => {
            require_undirected(g, "triangle_count")?;
            let mut count = 0i64;
            for e in g.edges() {
                // Count each triangle once, at its largest vertex w > v > u.
                let (a, b) = (g.neighbors(e.u), g.neighbors(e.v));
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            if a[i].0 > e.v {
                                count += 1;
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
            Ok(OracleAnswer::Integer(count))
        }
        Predecessors(u) => {
            require_directed(g, "predecessors")?;
            check_node(g, u)?;
            Ok(OracleAnswer::NodeSet(g.in_neighbors(u).iter().map(|&(v, _)| v).collect()))
        }
    }
}
