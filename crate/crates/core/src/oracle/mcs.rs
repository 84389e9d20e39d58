use super::{bounds, require_undirected, OracleAnswer, OracleError, Witness};
use crate::Graph;

struct Search<'a> {
    small: &'a Graph,
    large: &'a Graph,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    size: usize,
    best: Vec<Option<usize>>,
    best_size: usize,
}

impl Search<'_> {
    fn consistent(&self, u: usize, x: usize) -> bool {
        (0..u).all(|w| match self.map[w] {
            Some(y) => self.small.has_edge(u, w) == self.large.has_edge(x, y),
            None => true,
        })
    }

    fn run(&mut self, u: usize) {
        let n = self.small.node_count();
        if self.size + (n - u) <= self.best_size {
            return;
        }
        if u == n {
            self.best_size = self.size;
            self.best = self.map.clone();
            return;
        }
        for x in 0..self.large.node_count() {
            if self.used[x] || !self.consistent(u, x) {
                continue;
            }
            self.map[u] = Some(x);
            self.used[x] = true;
            self.size += 1;
            self.run(u + 1);
            self.size -= 1;
            self.used[x] = false;
            self.map[u] = None;
        }
        self.run(u + 1);
    }
}

/// Maximum common induced subgraph, measured in nodes. The witness maps
/// nodes of `g1` to nodes of `g2`, ascending by `g1` node.
pub fn max_common_subgraph(g1: &Graph, g2: &Graph) -> Result<OracleAnswer, OracleError> {
    require_undirected(g1, "max_common_subgraph")?;
    require_undirected(g2, "max_common_subgraph")?;
    let swapped = g1.node_count() > g2.node_count();
    let (small, large) = if swapped { (g2, g1) } else { (g1, g2) };
    if small.node_count() > bounds::MCS_SMALLER {
        return Err(OracleError::SizeBound {
            op: "max_common_subgraph",
            limit: bounds::MCS_SMALLER,
            got: small.node_count(),
        });
    }
    let mut s = Search {
        small,
        large,
        map: vec![None; small.node_count()],
        used: vec![false; large.node_count()],
        size: 0,
        best: vec![None; small.node_count()],
        best_size: 0,
    };
    s.run(0);
    let mut mapping: Vec<(usize, usize)> = s
        .best
        .iter()
        .enumerate()
        .filter_map(|(u, x)| x.map(|x| if swapped { (x, u) } else { (u, x) }))
        .collect();
    mapping.sort_unstable();
    Ok(OracleAnswer::ValueWithWitness { value: s.best_size as i64, witness: Some(Witness::Mapping(mapping)) })
}
