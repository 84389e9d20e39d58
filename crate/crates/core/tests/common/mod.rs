//! Exhaustive reference solvers for small graphs, plus helpers shared by
//! the integration tests. Nothing here calls into `rtc_core::oracle`.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtc_core::llm::{CompletionBackend, ScriptedBackend};
use rtc_core::pipeline::{ArtifactCache, Pipeline, PipelineConfig};
use rtc_core::sandbox::{InterpreterCommand, Sandbox};
use rtc_core::{Edge, Graph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bernoulli graph: each pair independently with probability `p`.
pub fn bernoulli_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, directed: bool, weights: Option<(i64, i64)>) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push(match weights {
                    Some((lo, hi)) => Edge::weighted(u, v, rng.gen_range(lo..=hi)),
                    None => Edge::new(u, v),
                });
            }
        }
    }
    Graph::new(directed, n, edges).unwrap()
}

/// Calls `f` on every permutation of `items` (Heap's algorithm).
pub fn for_each_permutation(items: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, f);
    }
    let k = items.len();
    go(k, items, f);
}

fn step(g: &Graph, u: usize, v: usize) -> Option<i64> {
    g.weight(u, v)
}

/// Shortest path weight by enumerating every simple path from `s`.
pub fn bf_shortest_path(g: &Graph, s: usize, t: usize) -> i64 {
    fn dfs(g: &Graph, u: usize, t: usize, cost: i64, seen: &mut Vec<bool>, best: &mut Option<i64>) {
        if u == t {
            *best = Some(best.map_or(cost, |b| b.min(cost)));
            return;
        }
        for v in 0..g.node_count() {
            if seen[v] {
                continue;
            }
            if let Some(w) = step(g, u, v) {
                seen[v] = true;
                dfs(g, v, t, cost + w, seen, best);
                seen[v] = false;
            }
        }
    }
    let mut seen = vec![false; g.node_count()];
    seen[s] = true;
    let mut best = None;
    dfs(g, s, t, 0, &mut seen, &mut best);
    best.unwrap_or(-1)
}

/// Minimum s-t cut over all vertex bipartitions; equals the maximum flow.
pub fn bf_max_flow(g: &Graph, s: usize, t: usize) -> i64 {
    let n = g.node_count();
    let mut best = i64::MAX;
    for mask in 0u32..(1 << n) {
        if mask >> s & 1 == 0 || mask >> t & 1 == 1 {
            continue;
        }
        let cut: i64 = g
            .edges()
            .iter()
            .filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 0)
            .map(|e| e.weight.unwrap_or(1))
            .sum();
        best = best.min(cut);
    }
    best
}

/// Minimum spanning tree weight over every (n-1)-edge subset; `None` when
/// the graph is disconnected.
pub fn bf_mst(g: &Graph) -> Option<i64> {
    let n = g.node_count();
    let edges = g.edges();
    let mut best: Option<i64> = None;
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    fn choose(edges: &[Edge], start: usize, left: usize, picked: &mut Vec<usize>, n: usize, best: &mut Option<i64>) {
        if left == 0 {
            let mut p: Vec<usize> = (0..n).collect();
            for &i in picked.iter() {
                let (a, b) = (find(&mut p, edges[i].u), find(&mut p, edges[i].v));
                if a == b {
                    return;
                }
                p[a] = b;
            }
            let w: i64 = picked.iter().map(|&i| edges[i].weight.unwrap_or(1)).sum();
            *best = Some(best.map_or(w, |b| b.min(w)));
            return;
        }
        for i in start..edges.len() {
            if edges.len() - i < left {
                break;
            }
            picked.push(i);
            choose(edges, i + 1, left - 1, picked, n, best);
            picked.pop();
        }
    }
    if n <= 1 {
        return Some(0);
    }
    choose(edges, 0, n - 1, &mut Vec::new(), n, &mut best);
    best
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

pub fn bf_mis_size(g: &Graph) -> usize {
    subsets(g.node_count())
        .filter(|s| s.iter().all(|&u| s.iter().all(|&v| !g.has_edge(u, v))))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

pub fn bf_mvc_size(g: &Graph) -> usize {
    subsets(g.node_count())
        .filter(|s| g.edges().iter().all(|e| s.contains(&e.u) || s.contains(&e.v)))
        .map(|s| s.len())
        .min()
        .unwrap_or(0)
}

pub fn bf_clique_size(g: &Graph) -> usize {
    subsets(g.node_count())
        .filter(|s| s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v))))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

/// Cheapest closed tour through node 0 by permuting the other nodes; -1
/// when no tour exists or `n < 2`. A two-node tour uses its edge twice.
pub fn bf_tsp(g: &Graph) -> i64 {
    let n = g.node_count();
    if n < 2 {
        return -1;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<i64> = None;
    for_each_permutation(&mut rest, &mut |perm| {
        let mut cost = 0;
        let mut prev = 0;
        for &v in perm.iter().chain(std::iter::once(&0)) {
            match step(g, prev, v) {
                Some(w) => cost += w,
                None => return,
            }
            prev = v;
        }
        best = Some(best.map_or(cost, |b| b.min(cost)));
    });
    best.unwrap_or(-1)
}

pub fn bf_hamilton(g: &Graph) -> bool {
    let mut nodes: Vec<usize> = (0..g.node_count()).collect();
    let mut found = false;
    for_each_permutation(&mut nodes, &mut |perm| {
        if !found && perm.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            found = true;
        }
    });
    found
}

/// Whether some injection maps `pattern` into `host`, preserving edges and,
/// when `induced`, non-edges too.
pub fn bf_subgraph(pattern: &Graph, host: &Graph, induced: bool) -> bool {
    let k = pattern.node_count();
    let n = host.node_count();
    if k > n {
        return false;
    }
    fn go(pattern: &Graph, host: &Graph, induced: bool, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == pattern.node_count() {
            return true;
        }
        for h in 0..host.node_count() {
            if used[h] {
                continue;
            }
            let ok = (0..i).all(|j| {
                let fwd = pattern.has_edge(j, i) == host.has_edge(map[j], h) || (!induced && !pattern.has_edge(j, i));
                let back = pattern.has_edge(i, j) == host.has_edge(h, map[j]) || (!induced && !pattern.has_edge(i, j));
                fwd && back
            });
            if !ok {
                continue;
            }
            map.push(h);
            used[h] = true;
            if go(pattern, host, induced, map, used) {
                return true;
            }
            map.pop();
            used[h] = false;
        }
        false
    }
    go(pattern, host, induced, &mut Vec::new(), &mut vec![false; n])
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("scripted")
}

/// Interpreter used by the offline tests. The shipped fixtures only use the
/// standard library, so site initialisation is skipped to keep process
/// start-up short.
pub fn interpreter() -> InterpreterCommand {
    InterpreterCommand::new("python3 -S {program}", "program.py").unwrap()
}

pub fn scripted(latency: Duration) -> Arc<ScriptedBackend> {
    Arc::new(ScriptedBackend::from_dir(fixtures_dir()).with_latency(latency))
}

pub fn pipeline_with(backend: Arc<dyn CompletionBackend>, cache: Arc<ArtifactCache>) -> Pipeline {
    Pipeline::new(backend, Arc::new(Sandbox::new(interpreter(), 4)), cache, PipelineConfig::default())
}
