use super::{require_directed, OracleAnswer, OracleError};
use crate::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankAnswer {
    /// Highest score, lowest index on ties.
    pub argmax: usize,
    pub scores: Vec<f64>,
}

impl From<PageRankAnswer> for OracleAnswer {
    fn from(p: PageRankAnswer) -> Self {
        OracleAnswer::Node { node: p.argmax, scores: p.scores }
    }
}

/// Synchronous power iteration from the uniform vector `1/N`:
///
/// `PR'(v) = (1 - d)/N + d * (sum over arcs u->v of PR(u)/outdeg(u) + D/N)`
///
/// where `D` is the total score held by nodes without out-arcs, spread
/// uniformly so the vector keeps summing to one.
pub fn pagerank(g: &Graph, damping: f64, iterations: usize) -> Result<PageRankAnswer, OracleError> {
    require_directed(g, "pagerank")?;
    let n = g.node_count();
    if n == 0 {
        return Err(OracleError::EmptyGraph { op: "pagerank" });
    }
    if !(damping > 0.0 && damping < 1.0) {
        return Err(OracleError::InvalidParameter(format!("damping {damping} must lie in (0, 1)")));
    }
    if iterations == 0 {
        return Err(OracleError::InvalidParameter("iterations must be positive".into()));
    }
    let nf = n as f64;
    let mut scores = vec![1.0 / nf; n];
    for _ in 0..iterations {
        let dangling: f64 = (0..n).filter(|&u| g.out_degree(u) == 0).map(|u| scores[u]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        let mut next = vec![base; n];
        for (u, &s) in scores.iter().enumerate() {
            let out = g.out_degree(u);
            if out == 0 {
                continue;
            }
            let share = damping * s / out as f64;
            for &(v, _) in g.neighbors(u) {
                next[v] += share;
            }
        }
        scores = next;
    }
    let mut argmax = 0;
    for (v, &s) in scores.iter().enumerate() {
        if s > scores[argmax] {
            argmax = v;
        }
    }
    Ok(PageRankAnswer { argmax, scores })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_counterexample_argmax_is_two() {
        let g = Graph::from_pairs(
            true,
            5,
            &[(3, 2), (3, 1), (2, 0), (2, 1), (2, 4), (1, 3), (1, 0), (0, 2)],
        )
        .unwrap();
        let pr = pagerank(&g, 0.85, 3).unwrap();
        assert_eq!(pr.argmax, 2);
        assert!((pr.scores.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_cycle_ties_to_zero() {
        let g = Graph::from_pairs(true, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pr = pagerank(&g, 0.85, 10).unwrap();
        assert_eq!(pr.argmax, 0);
        assert!(pr.scores.iter().all(|&s| (s - 0.25).abs() < 1e-15));
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::new(true, 0, []).unwrap();
        assert!(matches!(pagerank(&g, 0.85, 3), Err(OracleError::EmptyGraph { .. })));
        let g = Graph::new(true, 2, []).unwrap();
        assert!(pagerank(&g, 1.0, 3).is_err());
        assert!(pagerank(&g, 0.85, 0).is_err());
        assert!(pagerank(&Graph::new(false, 2, []).unwrap(), 0.85, 1).is_err());
    }
}
