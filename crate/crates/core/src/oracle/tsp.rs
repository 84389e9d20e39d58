use std::collections::VecDeque;

use super::{bounds, require_undirected, OracleAnswer, OracleError, Witness};
use crate::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourAnswer {
    /// Minimal closed-tour cost, or -1 when there is none.
    pub cost: i64,
    /// Tour starting at node 0, without repeating it at the end.
    pub tour: Option<Vec<usize>>,
}

impl From<TourAnswer> for OracleAnswer {
    fn from(t: TourAnswer) -> Self {
        OracleAnswer::ValueWithWitness { value: t.cost, witness: t.tour.map(Witness::Path) }
    }
}

const INF: i64 = i64::MAX / 4;

/// Bitmask dynamic program over subsets that contain node 0. The table is
/// indexed by `mask >> 1`, so only half of the subsets are stored.
///
/// A single node has no tour (-1). Two nodes joined by an edge of weight `w`
/// give `2w`, the edge used in both directions.
pub fn tsp_held_karp(g: &Graph) -> Result<TourAnswer, OracleError> {
    require_undirected(g, "tsp_held_karp")?;
    let n = g.node_count();
    if n == 0 {
        return Err(OracleError::EmptyGraph { op: "tsp_held_karp" });
    }
    if n > bounds::TSP {
        return Err(OracleError::SizeBound { op: "tsp_held_karp", limit: bounds::TSP, got: n });
    }
    let none = TourAnswer { cost: -1, tour: None };
    let mut dist = vec![vec![INF; n]; n];
    for e in g.edges() {
        let w = e.weight.unwrap_or(1);
        if w < 0 {
            return Err(OracleError::NegativeWeight { u: e.u, v: e.v, weight: w });
        }
        if w < dist[e.u][e.v] {
            dist[e.u][e.v] = w;
            dist[e.v][e.u] = w;
        }
    }

    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if dist[u][v] < INF && !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Ok(none);
    }

    let half = 1usize << (n - 1);
    let mut dp = vec![INF; half * n];
    dp[0] = 0;
    // Supersets have larger masks, so ascending order finalises each row
    // before it is extended.
    for h in 0..half {
        let mask = (h << 1) | 1;
        for u in 0..n {
            let cur = dp[h * n + u];
            if mask & (1 << u) == 0 || cur >= INF {
                continue;
            }
            for v in 1..n {
                if mask & (1 << v) != 0 || dist[u][v] >= INF {
                    continue;
                }
                let slot = &mut dp[((mask | (1 << v)) >> 1) * n + v];
                *slot = (*slot).min(cur + dist[u][v]);
            }
        }
    }

    let full = half - 1;
    let mut best = INF;
    let mut last = 0;
    for u in 0..n {
        let total = dp[full * n + u].saturating_add(dist[u][0]);
        if total < best {
            best = total;
            last = u;
        }
    }
    if best >= INF {
        return Ok(none);
    }

    let mut tour = vec![last];
    let mut h = full;
    let mut v = last;
    while v != 0 {
        let prev_h = h & !(1 << (v - 1));
        let prev_mask = (prev_h << 1) | 1;
        let u = (0..n)
            .find(|&u| {
                prev_mask & (1 << u) != 0
                    && dist[u][v] < INF
                    && dp[prev_h * n + u] < INF
                    && dp[prev_h * n + u] + dist[u][v] == dp[h * n + v]
            })
            .expect("dp table has a predecessor for every finite entry");
        tour.push(u);
        h = prev_h;
        v = u;
    }
    tour.reverse();
    // Both directions cost the same; report the one with the smaller second node.
    if tour.len() > 2 && tour[1] > tour[tour.len() - 1] {
        tour[1..].reverse();
    }
    Ok(TourAnswer { cost: best, tour: Some(tour) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::from_triples(false, 3, &[(0, 1, 2), (1, 2, 3), (0, 2, 4)]).unwrap();
        assert_eq!(tsp_held_karp(&g).unwrap(), TourAnswer { cost: 9, tour: Some(vec![0, 1, 2]) });
    }

    #[test]
    fn two_nodes_reuse_the_edge() {
        let g = Graph::from_triples(false, 2, &[(0, 1, 7)]).unwrap();
        assert_eq!(tsp_held_karp(&g).unwrap(), TourAnswer { cost: 14, tour: Some(vec![0, 1]) });
    }

    #[test]
    fn single_node_and_disconnected() {
        let g = Graph::new(false, 1, []).unwrap();
        assert_eq!(tsp_held_karp(&g).unwrap().cost, -1);
        let g = Graph::from_triples(false, 3, &[(0, 1, 1)]).unwrap();
        assert_eq!(tsp_held_karp(&g).unwrap().cost, -1);
        // Connected but no cycle through every node.
        let g = Graph::from_triples(false, 3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(tsp_held_karp(&g).unwrap().cost, -1);
    }

    #[test]
    fn square_with_diagonals() {
        let g = Graph::from_triples(
            false,
            4,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 5), (1, 3, 5)],
        )
        .unwrap();
        let t = tsp_held_karp(&g).unwrap();
        assert_eq!(t.cost, 4);
        assert_eq!(t.tour, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn bounds() {
        assert!(matches!(tsp_held_karp(&Graph::new(false, 0, []).unwrap()), Err(OracleError::EmptyGraph { .. })));
        assert!(matches!(tsp_held_karp(&Graph::new(false, 21, []).unwrap()), Err(OracleError::SizeBound { .. })));
    }
}
