//! Maximum clique by branch and bound over `u64` bitsets, with greedy
//! colouring as the upper bound. Independent sets and vertex covers reduce
//! to cliques of the complement graph.

use super::{bounds, require_undirected, OracleError};
use crate::Graph;

/// Cap on the number of search-tree nodes before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 50_000_000 }
    }
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    current: Vec<usize>,
    best: Vec<usize>,
    visited: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `candidates`; returns nodes in colour order with
    /// the colour count reached at each.
    fn color_order(&self, candidates: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(candidates.count_ones() as usize);
        let mut uncolored = candidates;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut q = uncolored;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u64 << v) & !self.adj[v];
                uncolored &= !(1u64 << v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut candidates: u64) -> Result<(), ()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(());
        }
        let order = self.color_order(candidates);
        for &(v, color) in order.iter().rev() {
            if self.current.len() + color <= self.best.len() {
                return Ok(());
            }
            self.current.push(v);
            let next = candidates & self.adj[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            candidates &= !(1u64 << v);
        }
        Ok(())
    }
}

fn adjacency_bits(g: &Graph, complement: bool) -> Vec<u64> {
    let n = g.node_count();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..n)
        .map(|u| {
            let bits = g.neighbors(u).iter().fold(0u64, |m, &(v, _)| m | (1 << v));
            if complement { all & !bits & !(1 << u) } else { bits }
        })
        .collect()
}

fn solve(g: &Graph, op: &'static str, complement: bool, budget: SearchBudget) -> Result<Vec<usize>, OracleError> {
    require_undirected(g, op)?;
    let n = g.node_count();
    if n > bounds::CLIQUE_FAMILY {
        return Err(OracleError::SizeBound { op, limit: bounds::CLIQUE_FAMILY, got: n });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj = adjacency_bits(g, complement);
    let mut search = CliqueSearch { adj: &adj, current: Vec::new(), best: Vec::new(), visited: 0, budget: budget.max_nodes };
    let all = (1u64 << n) - 1;
    search
        .expand(all)
        .map_err(|()| OracleError::BudgetExceeded { op, budget: budget.max_nodes })?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

pub fn max_clique(g: &Graph) -> Result<Vec<usize>, OracleError> {
    solve(g, "max_clique", false, SearchBudget::default())
}

pub fn max_clique_with_budget(g: &Graph, budget: SearchBudget) -> Result<Vec<usize>, OracleError> {
    solve(g, "max_clique", false, budget)
}

pub fn exact_mis(g: &Graph) -> Result<Vec<usize>, OracleError> {
    solve(g, "exact_mis", true, SearchBudget::default())
}

/// Complement of the maximum independent set found by [`exact_mis`].
pub fn exact_mvc(g: &Graph) -> Result<Vec<usize>, OracleError> {
    let mis = solve(g, "exact_mvc", true, SearchBudget::default())?;
    let mut in_mis = vec![false; g.node_count()];
    for v in mis {
        in_mis[v] = true;
    }
    Ok((0..g.node_count()).filter(|&v| !in_mis[v]).collect())
}
