use super::{require_undirected, OracleAnswer, OracleError, Witness};
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub weight: i64,
    pub edges: Vec<(usize, usize)>,
}

impl From<SpanningTree> for OracleAnswer {
    fn from(t: SpanningTree) -> Self {
        OracleAnswer::ValueWithWitness { value: t.weight, witness: Some(Witness::Edges(t.edges)) }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Kruskal's algorithm; edges considered by (weight, u, v).
pub fn mst_weight(g: &Graph) -> Result<SpanningTree, OracleError> {
    require_undirected(g, "mst_weight")?;
    if g.edge_count() > 0 && !g.is_weighted() {
        return Err(OracleError::ModeMismatch { op: "mst_weight", required: "weighted" });
    }
    let n = g.node_count();
    let mut edges: Vec<(i64, usize, usize)> =
        g.edges().iter().map(|e| (e.weight.unwrap_or(0), e.u, e.v)).collect();
    edges.sort_unstable();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut tree = SpanningTree { weight: 0, edges: Vec::with_capacity(n.saturating_sub(1)) };
    for (w, u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            tree.weight += w;
            tree.edges.push((u, v));
        }
    }
    if n > 0 && tree.edges.len() != n - 1 {
        return Err(OracleError::Disconnected { op: "mst_weight" });
    }
    Ok(tree)
}
