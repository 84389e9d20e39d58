use std::collections::VecDeque;

use super::{check_node, OracleError};
use crate::Graph;

struct Arc {
    to: usize,
    cap: i64,
}

/// Dinic's algorithm over a residual network.
struct Network {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Network {
    fn new(n: usize) -> Self {
        Self { arcs: Vec::new(), adj: vec![Vec::new(); n], level: vec![0; n], cursor: vec![0; n] }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64) {
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: 0 });
    }

    fn levels(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    q.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn push(&mut self, u: usize, t: usize, limit: i64) -> i64 {
        if u == t {
            return limit;
        }
        while self.cursor[u] < self.adj[u].len() {
            let a = self.adj[u][self.cursor[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.push(to, t, limit.min(cap));
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.levels(s, t) {
            self.cursor.fill(0);
            loop {
                let f = self.push(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Maximum `s`-`t` flow. Edge weights are capacities (1 when unweighted);
/// undirected edges become two opposite arcs of equal capacity.
pub fn max_flow(g: &Graph, s: usize, t: usize) -> Result<i64, OracleError> {
    check_node(g, s)?;
    check_node(g, t)?;
    if s == t {
        return Err(OracleError::SameEndpoints(s));
    }
    let mut net = Network::new(g.node_count());
    for e in g.edges() {
        let cap = e.weight.unwrap_or(1);
        if cap < 0 {
            return Err(OracleError::NegativeWeight { u: e.u, v: e.v, weight: cap });
        }
        net.add(e.u, e.v, cap);
        if !g.is_directed() {
            net.add(e.v, e.u, cap);
        }
    }
    Ok(net.run(s, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let g = Graph::from_triples(true, 2, &[(0, 1, 5)]).unwrap();
        assert_eq!(max_flow(&g, 0, 1), Ok(5));
        assert_eq!(max_flow(&g, 1, 0), Ok(0));
    }

    #[test]
    fn parallel_paths() {
        let g = Graph::from_triples(true, 4, &[(0, 1, 3), (1, 3, 3), (0, 2, 4), (2, 3, 4)]).unwrap();
        assert_eq!(max_flow(&g, 0, 3), Ok(7));
    }

    #[test]
    fn needs_residual_reversal() {
        // Greedy 0-1-2-3 blocks both paths unless flow on 1-2 is undone.
        let g = Graph::from_triples(
            true,
            4,
            &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
        .unwrap();
        assert_eq!(max_flow(&g, 0, 3), Ok(2));
    }

    #[test]
    fn undirected_edges_work_both_ways() {
        let g = Graph::from_triples(false, 3, &[(1, 0, 2), (2, 1, 5)]).unwrap();
        assert_eq!(max_flow(&g, 2, 0), Ok(2));
        assert_eq!(max_flow(&g, 0, 0), Err(OracleError::SameEndpoints(0)));
    }
}
