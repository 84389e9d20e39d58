//! Witness checkers. These only use the graph's adjacency queries and share
//! no code with the solvers in [`crate::oracle`], so a solver bug cannot
//! hide behind a matching checker bug.

use thiserror::Error;

use crate::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),
    #[error("node {0} appears more than once")]
    RepeatedNode(usize),
    #[error("no edge from {0} to {1}")]
    MissingEdge(usize, usize),
    #[error("expected endpoints {expected:?}, got {got:?}")]
    WrongEndpoints { expected: (usize, usize), got: (usize, usize) },
    #[error("expected {expected} nodes, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("empty sequence")]
    Empty,
    #[error("nodes {0} and {1} are adjacent")]
    Adjacent(usize, usize),
    #[error("edge ({0}, {1}) is not covered")]
    Uncovered(usize, usize),
    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("arc {0}->{1} goes backwards in the order")]
    OrderViolation(usize, usize),
    #[error("edge set does not form a spanning tree")]
    NotSpanningTree,
    #[error("mapping does not preserve the relation between {0} and {1}")]
    MappingMismatch(usize, usize),
}

fn distinct_in_range(g: &Graph, nodes: &[usize]) -> Result<(), VerifyError> {
    let mut seen = vec![false; g.node_count()];
    for &u in nodes {
        if u >= g.node_count() {
            return Err(VerifyError::NodeOutOfRange(u));
        }
        if std::mem::replace(&mut seen[u], true) {
            return Err(VerifyError::RepeatedNode(u));
        }
    }
    Ok(())
}

fn step_weight(g: &Graph, u: usize, v: usize) -> Result<i64, VerifyError> {
    g.weight(u, v).ok_or(VerifyError::MissingEdge(u, v))
}

/// Cost of a simple path from `s` to `t`; unweighted edges cost 1.
pub fn path_cost(g: &Graph, path: &[usize], s: usize, t: usize) -> Result<i64, VerifyError> {
    let (&first, &last) = path.first().zip(path.last()).ok_or(VerifyError::Empty)?;
    distinct_in_range(g, path)?;
    if (first, last) != (s, t) {
        return Err(VerifyError::WrongEndpoints { expected: (s, t), got: (first, last) });
    }
    path.windows(2).map(|w| step_weight(g, w[0], w[1])).sum()
}

/// Visits every node exactly once along edges.
pub fn check_hamilton_path(g: &Graph, path: &[usize]) -> Result<(), VerifyError> {
    if path.len() != g.node_count() {
        return Err(VerifyError::WrongLength { expected: g.node_count(), got: path.len() });
    }
    distinct_in_range(g, path)?;
    for w in path.windows(2) {
        step_weight(g, w[0], w[1])?;
    }
    Ok(())
}

/// Cost of a closed tour given as a node sequence without the repeated
/// start. A two-node tour uses its single edge twice.
pub fn tour_cost(g: &Graph, tour: &[usize]) -> Result<i64, VerifyError> {
    check_hamilton_path(g, tour)?;
    if tour.len() < 2 {
        return Err(VerifyError::WrongLength { expected: 2, got: tour.len() });
    }
    let open: i64 = tour.windows(2).map(|w| step_weight(g, w[0], w[1])).sum::<Result<_, _>>()?;
    Ok(open + step_weight(g, tour[tour.len() - 1], tour[0])?)
}

pub fn check_independent_set(g: &Graph, set: &[usize]) -> Result<(), VerifyError> {
    distinct_in_range(g, set)?;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) || g.has_edge(v, u) {
                return Err(VerifyError::Adjacent(u, v));
            }
        }
    }
    Ok(())
}

pub fn check_vertex_cover(g: &Graph, cover: &[usize]) -> Result<(), VerifyError> {
    distinct_in_range(g, cover)?;
    let mut inside = vec![false; g.node_count()];
    for &u in cover {
        inside[u] = true;
    }
    match g.edges().iter().find(|e| !inside[e.u] && !inside[e.v]) {
        Some(e) => Err(VerifyError::Uncovered(e.u, e.v)),
        None => Ok(()),
    }
}

pub fn check_clique(g: &Graph, set: &[usize]) -> Result<(), VerifyError> {
    distinct_in_range(g, set)?;
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if !g.has_edge(u, v) {
                return Err(VerifyError::NotAdjacent(u, v));
            }
        }
    }
    Ok(())
}

pub fn check_topological_order(g: &Graph, order: &[usize]) -> Result<(), VerifyError> {
    if order.len() != g.node_count() {
        return Err(VerifyError::WrongLength { expected: g.node_count(), got: order.len() });
    }
    distinct_in_range(g, order)?;
    let mut position = vec![0; g.node_count()];
    for (i, &u) in order.iter().enumerate() {
        position[u] = i;
    }
    match g.edges().iter().find(|e| position[e.u] > position[e.v]) {
        Some(e) => Err(VerifyError::OrderViolation(e.u, e.v)),
        None => Ok(()),
    }
}

/// Total weight of a spanning tree given as node pairs.
pub fn spanning_tree_weight(g: &Graph, edges: &[(usize, usize)]) -> Result<i64, VerifyError> {
    let n = g.node_count();
    if edges.len() + 1 != n.max(1) {
        return Err(VerifyError::NotSpanningTree);
    }
    // Label propagation: merge component labels edge by edge.
    let mut label: Vec<usize> = (0..n).collect();
    let mut total = 0;
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(VerifyError::NodeOutOfRange(u.max(v)));
        }
        total += step_weight(g, u, v)?;
        let (a, b) = (label[u], label[v]);
        if a == b {
            return Err(VerifyError::NotSpanningTree);
        }
        for l in label.iter_mut().filter(|l| **l == b) {
            *l = a;
        }
    }
    Ok(total)
}

/// Checks `(a, b)` pairs as an injective map from `g1` into `g2` that keeps
/// edges, and non-edges too when `induced` is set.
pub fn check_mapping(g1: &Graph, g2: &Graph, mapping: &[(usize, usize)], induced: bool) -> Result<(), VerifyError> {
    let from: Vec<usize> = mapping.iter().map(|p| p.0).collect();
    let to: Vec<usize> = mapping.iter().map(|p| p.1).collect();
    distinct_in_range(g1, &from)?;
    distinct_in_range(g2, &to)?;
    for &(a, x) in mapping {
        for &(b, y) in mapping {
            if a == b {
                continue;
            }
            let (e1, e2) = (g1.has_edge(a, b), g2.has_edge(x, y));
            if (e1 && !e2) || (induced && e2 && !e1) {
                return Err(VerifyError::MappingMismatch(a, b));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Graph {
        Graph::from_triples(false, 4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, 4)]).unwrap()
    }

    #[test]
    fn paths_and_tours() {
        let g = square();
        assert_eq!(path_cost(&g, &[0, 1, 2], 0, 2), Ok(3));
        assert_eq!(path_cost(&g, &[0, 2], 0, 2), Err(VerifyError::MissingEdge(0, 2)));
        assert!(matches!(path_cost(&g, &[1, 2], 0, 2), Err(VerifyError::WrongEndpoints { .. })));
        assert_eq!(tour_cost(&g, &[0, 1, 2, 3]), Ok(10));
        assert_eq!(tour_cost(&g, &[0, 1, 3, 2]), Err(VerifyError::MissingEdge(1, 3)));
        assert_eq!(tour_cost(&g, &[0, 1, 2, 2]), Err(VerifyError::RepeatedNode(2)));
        let two = Graph::from_triples(false, 2, &[(0, 1, 5)]).unwrap();
        assert_eq!(tour_cost(&two, &[1, 0]), Ok(10));
    }

    #[test]
    fn sets() {
        let g = square();
        assert!(check_independent_set(&g, &[0, 2]).is_ok());
        assert!(check_independent_set(&g, &[0, 1]).is_err());
        assert!(check_vertex_cover(&g, &[1, 3]).is_ok());
        assert_eq!(check_vertex_cover(&g, &[1]), Err(VerifyError::Uncovered(0, 3)));
        assert!(check_clique(&g, &[2, 3]).is_ok());
        assert!(check_clique(&g, &[0, 2]).is_err());
    }

    #[test]
    fn orders_and_trees() {
        let dag = Graph::from_pairs(true, 3, &[(0, 1), (1, 2)]).unwrap();
        assert!(check_topological_order(&dag, &[0, 1, 2]).is_ok());
        assert_eq!(check_topological_order(&dag, &[1, 0, 2]), Err(VerifyError::OrderViolation(0, 1)));
        let g = square();
        assert_eq!(spanning_tree_weight(&g, &[(0, 1), (1, 2), (2, 3)]), Ok(6));
        assert_eq!(spanning_tree_weight(&g, &[(0, 1), (1, 2)]), Err(VerifyError::NotSpanningTree));
    }

    #[test]
    fn mappings() {
        let p3 = Graph::from_pairs(false, 3, &[(0, 1), (1, 2)]).unwrap();
        let k3 = Graph::from_pairs(false, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let id = [(0, 0), (1, 1), (2, 2)];
        assert!(check_mapping(&p3, &k3, &id, false).is_ok());
        assert!(check_mapping(&p3, &k3, &id, true).is_err());
    }
}
