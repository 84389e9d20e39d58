use std::collections::VecDeque;

use super::{check_node, require_undirected, OracleAnswer, OracleError, Witness};
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityQuery {
    /// Reachability from the first node to the second (follows arc direction).
    Connected(usize, usize),
    /// Weakly connected components on directed graphs.
    ComponentCount,
    Components,
    /// Largest hop distance; undirected, connected graphs only.
    Diameter,
    DfsOrder(usize),
    BfsOrder(usize),
}

/// BFS hop distances and parents from `start`.
fn bfs(g: &Graph, start: usize) -> (Vec<Option<usize>>, Vec<usize>, Vec<usize>) {
    let n = g.node_count();
    let mut dist = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    dist[start] = Some(0);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        let du = dist[u].unwrap();
        for &(v, _) in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent, order)
}

fn dfs_order(g: &Graph, start: usize) -> Vec<usize> {
    let mut seen = vec![false; g.node_count()];
    let mut order = vec![start];
    seen[start] = true;
    // (node, index of the next neighbour to try) mirrors the recursive walk.
    let mut stack = vec![(start, 0usize)];
    while let Some((u, next)) = stack.last_mut() {
        let nbrs = g.neighbors(*u);
        if let Some(&(v, _)) = nbrs.get(*next) {
            *next += 1;
            if !seen[v] {
                seen[v] = true;
                order.push(v);
                stack.push((v, 0));
            }
        } else {
            stack.pop();
        }
    }
    order
}

fn weak_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &(v, _) in g.neighbors(u).iter().chain(g.in_neighbors(u)) {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    parts
}

pub fn connectivity_query(g: &Graph, q: ConnectivityQuery) -> Result<OracleAnswer, OracleError> {
    match q {
        ConnectivityQuery::Connected(u, v) => {
            check_node(g, u)?;
            check_node(g, v)?;
            let (dist, parent, _) = bfs(g, u);
            if dist[v].is_none() {
                return Ok(OracleAnswer::Boolean { value: false, witness: None });
            }
            let mut path = vec![v];
            while *path.last().unwrap() != u {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            Ok(OracleAnswer::Boolean { value: true, witness: Some(Witness::Path(path)) })
        }
        ConnectivityQuery::ComponentCount => Ok(OracleAnswer::Integer(weak_components(g).len() as i64)),
        ConnectivityQuery::Components => Ok(OracleAnswer::Partition(weak_components(g))),
        ConnectivityQuery::Diameter => {
            require_undirected(g, "diameter")?;
            if g.node_count() == 0 {
                return Err(OracleError::EmptyGraph { op: "diameter" });
            }
            let mut best = 0;
            for s in 0..g.node_count() {
                let (dist, _, _) = bfs(g, s);
                for d in dist {
                    best = best.max(d.ok_or(OracleError::Disconnected { op: "diameter" })?);
                }
            }
            Ok(OracleAnswer::Integer(best as i64))
        }
        ConnectivityQuery::DfsOrder(s) => {
            check_node(g, s)?;
            Ok(OracleAnswer::NodeSequence(Some(dfs_order(g, s))))
        }
        ConnectivityQuery::BfsOrder(s) => {
            check_node(g, s)?;
            Ok(OracleAnswer::NodeSequence(Some(bfs(g, s).2)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::*;
    use ConnectivityQuery::*;

    #[test]
    fn components() {
        let g = Graph::from_pairs(false, 4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(connectivity_query(&g, ComponentCount), Ok(OracleAnswer::Integer(2)));
        assert_eq!(
            connectivity_query(&g, Components),
            Ok(OracleAnswer::Partition(vec![vec![0, 1], vec![2, 3]]))
        );
        assert!(matches!(
            connectivity_query(&g, Diameter),
            Err(OracleError::Disconnected { .. })
        ));
    }

    #[test]
    fn diameters() {
        assert_eq!(connectivity_query(&path(4), Diameter), Ok(OracleAnswer::Integer(3)));
        assert_eq!(connectivity_query(&petersen(), Diameter), Ok(OracleAnswer::Integer(2)));
        assert_eq!(connectivity_query(&path(1), Diameter), Ok(OracleAnswer::Integer(0)));
    }

    #[test]
    fn traversal_orders_use_ascending_neighbours() {
        // 0-2, 0-1, 1-3, 2-3
        let g = Graph::from_pairs(false, 4, &[(0, 2), (0, 1), (1, 3), (2, 3)]).unwrap();
        assert_eq!(connectivity_query(&g, DfsOrder(0)), Ok(OracleAnswer::NodeSequence(Some(vec![0, 1, 3, 2]))));
        assert_eq!(connectivity_query(&g, BfsOrder(0)), Ok(OracleAnswer::NodeSequence(Some(vec![0, 1, 2, 3]))));
    }

    #[test]
    fn directed_reachability() {
        let g = Graph::from_pairs(true, 3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            connectivity_query(&g, Connected(0, 2)),
            Ok(OracleAnswer::Boolean { value: true, witness: Some(Witness::Path(vec![0, 1, 2])) })
        );
        assert_eq!(
            connectivity_query(&g, Connected(2, 0)),
            Ok(OracleAnswer::Boolean { value: false, witness: None })
        );
        assert_eq!(connectivity_query(&g, ComponentCount), Ok(OracleAnswer::Integer(1)));
        assert!(connectivity_query(&g, DfsOrder(5)).is_err());
    }
}
