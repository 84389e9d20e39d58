use std::collections::HashSet;

use super::{OracleAnswer, Witness};
use crate::Graph;

struct Search<'g> {
    g: &'g Graph,
    visited: Vec<bool>,
    path: Vec<usize>,
    // (visited mask, endpoint) states already shown to be dead ends; only
    // kept for graphs of at most 64 nodes.
    dead: Option<HashSet<(u64, usize)>>,
}

impl Search<'_> {
    fn mask(&self) -> u64 {
        self.path.iter().fold(0u64, |m, &u| m | (1 << u))
    }

    /// Extends the path from its last node. A dead branch backtracks and the
    /// caller keeps trying other neighbours; only a full path returns true.
    fn extend(&mut self) -> bool {
        if self.path.len() == self.g.node_count() {
            return true;
        }
        let u = *self.path.last().unwrap();
        if let Some(dead) = &self.dead {
            if dead.contains(&(self.mask(), u)) {
                return false;
            }
        }
        for &(v, _) in self.g.neighbors(u) {
            if self.visited[v] {
                continue;
            }
            self.visited[v] = true;
            self.path.push(v);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.visited[v] = false;
        }
        let key = (self.mask(), u);
        if let Some(dead) = &mut self.dead {
            dead.insert(key);
        }
        false
    }
}

/// Hamiltonian path search. Starting nodes are tried in ascending order
/// (restricted to degree-1 nodes when any exist on an undirected graph).
pub fn hamilton_path(g: &Graph) -> OracleAnswer {
    let no = OracleAnswer::Boolean { value: false, witness: None };
    let n = g.node_count();
    if n == 0 {
        return no;
    }
    let mut starts: Vec<usize> = (0..n).collect();
    if !g.is_directed() && n > 1 {
        if (0..n).any(|u| g.out_degree(u) == 0) {
            return no;
        }
        let leaves: Vec<usize> = (0..n).filter(|&u| g.out_degree(u) == 1).collect();
        if leaves.len() > 2 {
            return no;
        }
        if !leaves.is_empty() {
            starts = leaves;
        }
    }
    let mut search = Search {
        g,
        visited: vec![false; n],
        path: Vec::with_capacity(n),
        dead: (n <= 64).then(HashSet::new),
    };
    for s in starts {
        search.visited[s] = true;
        search.path.push(s);
        if search.extend() {
            return OracleAnswer::Boolean { value: true, witness: Some(Witness::Path(search.path)) };
        }
        search.path.pop();
        search.visited[s] = false;
    }
    no
}
