use std::collections::VecDeque;

use super::OracleAnswer;
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteAnswer {
    pub bipartite: bool,
    /// Side (0 or 1) of each node; BFS colouring from the lowest index.
    pub coloring: Option<Vec<u8>>,
    /// Maximum matching as `(side-0 node, side-1 node)` pairs.
    pub matching: Option<Vec<(usize, usize)>>,
}

impl From<BipartiteAnswer> for OracleAnswer {
    fn from(b: BipartiteAnswer) -> Self {
        OracleAnswer::Boolean { value: b.bipartite, witness: None }
    }
}

fn two_color(g: &Graph) -> Option<Vec<u8>> {
    let n = g.node_count();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &(v, _) in g.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    q.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

fn augment(g: &Graph, u: usize, seen: &mut [bool], mate: &mut [usize]) -> bool {
    for &(v, _) in g.neighbors(u) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if mate[v] == usize::MAX || augment(g, mate[v], seen, mate) {
            mate[v] = u;
            return true;
        }
    }
    false
}

/// Two-colourability, plus a maximum matching (Kuhn's augmenting paths)
/// when the graph is bipartite. Directed input is read as undirected.
pub fn bipartite(g: &Graph) -> BipartiteAnswer {
    let undirected;
    let g = if g.is_directed() {
        undirected = g.to_undirected();
        &undirected
    } else {
        g
    };
    let Some(color) = two_color(g) else {
        return BipartiteAnswer { bipartite: false, coloring: None, matching: None };
    };
    let n = g.node_count();
    let mut mate = vec![usize::MAX; n];
    for u in (0..n).filter(|&u| color[u] == 0) {
        let mut seen = vec![false; n];
        augment(g, u, &mut seen, &mut mate);
    }
    let mut matching: Vec<(usize, usize)> =
        (0..n).filter(|&v| mate[v] != usize::MAX).map(|v| (mate[v], v)).collect();
    matching.sort_unstable();
    BipartiteAnswer { bipartite: true, coloring: Some(color), matching: Some(matching) }
}
