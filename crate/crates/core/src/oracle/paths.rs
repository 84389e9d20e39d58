use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{check_node, OracleAnswer, OracleError, Witness};
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAnswer {
    /// `-1` when `t` is unreachable.
    pub distance: i64,
    pub path: Option<Vec<usize>>,
}

impl From<PathAnswer> for OracleAnswer {
    fn from(p: PathAnswer) -> Self {
        OracleAnswer::ValueWithWitness { value: p.distance, witness: p.path.map(Witness::Path) }
    }
}

/// Dijkstra from `s`; unweighted edges count as 1.
pub fn shortest_path(g: &Graph, s: usize, t: usize) -> Result<PathAnswer, OracleError> {
    check_node(g, s)?;
    check_node(g, t)?;
    if let Some(e) = g.edges().iter().find(|e| e.weight.is_some_and(|w| w < 0)) {
        return Err(OracleError::NegativeWeight { u: e.u, v: e.v, weight: e.weight.unwrap() });
    }
    let n = g.node_count();
    let mut dist = vec![i64::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut heap = BinaryHeap::from([Reverse((0i64, s))]);
    dist[s] = 0;
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if u == t {
            break;
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                parent[v] = u;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    if dist[t] == i64::MAX {
        return Ok(PathAnswer { distance: -1, path: None });
    }
    let mut path = vec![t];
    while *path.last().unwrap() != s {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(PathAnswer { distance: dist[t], path: Some(path) })
}
