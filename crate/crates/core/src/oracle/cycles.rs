use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{require_directed, OracleAnswer, OracleError, Witness};
use crate::Graph;

/// Finds a cycle (length >= 3 when undirected). The witness lists the cycle's
/// nodes in traversal order without repeating the first.
pub fn detect_cycle(g: &Graph) -> OracleAnswer {
    let n = g.node_count();
    // Position on the current DFS stack, or usize::MAX.
    let mut stack_pos = vec![usize::MAX; n];
    let mut done = vec![false; n];
    for root in 0..n {
        if done[root] {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        stack_pos[root] = 0;
        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            let nbrs = g.neighbors(u);
            if let Some(&(v, _)) = nbrs.get(*next) {
                *next += 1;
                if !g.is_directed() && v == parent {
                    continue;
                }
                if stack_pos[v] != usize::MAX {
                    let cycle = stack[stack_pos[v]..].iter().map(|f| f.0).collect();
                    return OracleAnswer::Boolean { value: true, witness: Some(Witness::Path(cycle)) };
                }
                if !done[v] {
                    stack_pos[v] = stack.len();
                    stack.push((v, u, 0));
                }
            } else {
                stack_pos[u] = usize::MAX;
                done[u] = true;
                stack.pop();
            }
        }
    }
    OracleAnswer::Boolean { value: false, witness: None }
}

/// Kahn's algorithm taking the smallest available node first. Returns
/// `NodeSequence(None)` for cyclic graphs.
pub fn topological_order(g: &Graph) -> Result<OracleAnswer, OracleError> {
    require_directed(g, "topological_order")?;
    let n = g.node_count();
    let mut indeg: Vec<usize> = (0..n).map(|u| g.in_neighbors(u).len()).collect();
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&u| indeg[u] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &(v, _) in g.neighbors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    Ok(OracleAnswer::NodeSequence((order.len() == n).then_some(order)))
}
