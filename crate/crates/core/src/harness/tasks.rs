//! Task families, random instance generation and gold answers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{CheckerKind, HarnessError, ProblemInstance};
use crate::graph::{render_edge_tuples, render_node_range};
use crate::oracle::{self, ConnectivityQuery, LocalQuery, MatchMode, OracleAnswer, Witness};
use crate::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    NodeCount,
    EdgeCount,
    EdgeExistence,
    NodeDegree,
    ConnectedNodes,
    CommonNeighbors,
    Jaccard,
    TriangleCount,
    Predecessors,
    Connectivity,
    ComponentCount,
    Diameter,
    MultiQueryDistance,
    CycleCheck,
    TopologicalSort,
    ShortestPath,
    ShortestPathRoute,
    MaxFlow,
    Bipartite,
    HamiltonPath,
    Pagerank,
    MstWeight,
    Mis,
    Mvc,
    MaxClique,
    Mcs,
    SubgraphMatch,
    Tsp,
}

use TaskKind::*;

impl TaskKind {
    pub const ALL: [TaskKind; 28] = [
        NodeCount, EdgeCount, EdgeExistence, NodeDegree, ConnectedNodes, CommonNeighbors, Jaccard,
        TriangleCount, Predecessors, Connectivity, ComponentCount, Diameter, MultiQueryDistance,
        CycleCheck, TopologicalSort, ShortestPath, ShortestPathRoute, MaxFlow, Bipartite, HamiltonPath,
        Pagerank, MstWeight, Mis, Mvc, MaxClique, Mcs, SubgraphMatch, Tsp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NodeCount => "node_count",
            EdgeCount => "edge_count",
            EdgeExistence => "edge_existence",
            NodeDegree => "node_degree",
            ConnectedNodes => "connected_nodes",
            CommonNeighbors => "common_neighbors",
            Jaccard => "jaccard",
            TriangleCount => "triangle_count",
            Predecessors => "predecessors",
            Connectivity => "connectivity",
            ComponentCount => "component_count",
            Diameter => "diameter",
            MultiQueryDistance => "multi_query_distance",
            CycleCheck => "cycle_check",
            TopologicalSort => "topological_sort",
            ShortestPath => "shortest_path",
            ShortestPathRoute => "shortest_path_route",
            MaxFlow => "max_flow",
            Bipartite => "bipartite",
            HamiltonPath => "hamilton_path",
            Pagerank => "pagerank",
            MstWeight => "mst_weight",
            Mis => "mis",
            Mvc => "mvc",
            MaxClique => "max_clique",
            Mcs => "mcs",
            SubgraphMatch => "subgraph_match",
            Tsp => "tsp",
        }
    }

    pub fn directed(self) -> bool {
        matches!(self, Predecessors | CycleCheck | TopologicalSort | MaxFlow | Pagerank | SubgraphMatch)
    }

    pub fn weighted(self) -> bool {
        matches!(self, ShortestPath | ShortestPathRoute | MaxFlow | MstWeight | Tsp | MultiQueryDistance)
    }

    pub fn checker(self) -> CheckerKind {
        match self {
            EdgeExistence | Connectivity | CycleCheck | Bipartite | SubgraphMatch => CheckerKind::YesNo,
            Jaccard => CheckerKind::NumericTol,
            TopologicalSort => CheckerKind::ValidOrder,
            ShortestPathRoute | HamiltonPath | Tsp => CheckerKind::ValidPathOptimal,
            Mis | Mvc | MaxClique => CheckerKind::ValidSetOptimal,
            ConnectedNodes | Predecessors | MultiQueryDistance => CheckerKind::ExactTextMultiline,
            _ => CheckerKind::ExactInt,
        }
    }

    pub fn default_params(self) -> GenParams {
        let (n, density) = match self {
            ShortestPath | MultiQueryDistance | Mis | Mvc => (10, 0.3),
            MaxClique => (10, 0.5),
            Diameter | MstWeight => (8, 0.5),
            HamiltonPath | SubgraphMatch => (8, 0.4),
            Mcs => (6, 0.4),
            Tsp => (8, 1.0),
            _ => (8, 0.3),
        };
        GenParams { n, density, min_weight: 1, max_weight: 100 }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TaskKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::UnknownTask(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub density: f64,
    pub min_weight: i64,
    pub max_weight: i64,
}

impl GenParams {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n < 2 {
            return Err(HarnessError::InvalidParams(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(HarnessError::InvalidParams(format!("density must lie in (0, 1], got {}", self.density)));
        }
        if self.min_weight < 1 || self.min_weight > self.max_weight {
            return Err(HarnessError::InvalidParams(format!(
                "weight range {}..={} is empty or non-positive",
                self.min_weight, self.max_weight
            )));
        }
        Ok(())
    }

    /// `floor(p * n(n-1)/2)`, with a small epsilon so products such as
    /// `0.3 * 1225` do not lose an edge to rounding.
    pub fn edge_count(&self) -> usize {
        let pairs = self.n * (self.n - 1) / 2;
        ((self.density * pairs as f64) + 1e-9).floor() as usize
    }
}

/// A task as the harness sees it: an id, a judge and, for generated task
/// families, the generator settings. Datasets with ids outside
/// [`TaskKind`] are judged by whitespace-normalized text equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub task_id: String,
    pub kind: Option<TaskKind>,
    pub checker: CheckerKind,
    pub params: GenParams,
}

impl TaskSpec {
    pub fn new(kind: TaskKind) -> Self {
        Self { task_id: kind.name().into(), kind: Some(kind), checker: kind.checker(), params: kind.default_params() }
    }

    pub fn for_task_id(task_id: &str) -> Self {
        match task_id.parse::<TaskKind>() {
            Ok(kind) => Self::new(kind),
            Err(_) => Self {
                task_id: task_id.into(),
                kind: None,
                checker: CheckerKind::ExactTextMultiline,
                params: GenParams { n: 2, density: 1.0, min_weight: 1, max_weight: 1 },
            },
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.params.n = n;
        self
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.params.density = density;
        self
    }

    pub fn with_weights(mut self, min: i64, max: i64) -> Self {
        self.params.min_weight = min;
        self.params.max_weight = max;
        self
    }
}

/// `count` instances; instance `i` uses seed `seed + i`, so any instance can
/// be regenerated on its own.
pub fn generate_instances(spec: &TaskSpec, count: usize, seed: u64) -> Result<Vec<ProblemInstance>, HarnessError> {
    let kind = spec.kind.ok_or_else(|| HarnessError::UnknownTask(spec.task_id.clone()))?;
    spec.params.validate()?;
    (0..count)
        .map(|i| {
            let instance_seed = seed.wrapping_add(i as u64);
            let mut gen = Generator { rng: ChaCha8Rng::seed_from_u64(instance_seed), params: spec.params, kind };
            let built = gen.build()?;
            let mut meta = BTreeMap::new();
            meta.insert("source".into(), json!("generated"));
            meta.insert("seed".into(), json!(instance_seed));
            meta.insert("index".into(), json!(i));
            meta.insert("node_count".into(), json!(spec.params.n));
            meta.insert("edge_count".into(), json!(built.edge_count));
            meta.insert("density".into(), json!(spec.params.density));
            if let Some(q) = built.query {
                meta.insert("query".into(), json!(q));
            }
            Ok(ProblemInstance {
                task_id: spec.task_id.clone(),
                problem_text: built.text,
                gold_answer: Some(built.gold),
                meta,
            })
        })
        .collect()
}

struct Built {
    text: String,
    gold: String,
    query: Option<Vec<usize>>,
    edge_count: usize,
}

struct Generator {
    rng: ChaCha8Rng,
    params: GenParams,
    kind: TaskKind,
}

const CONNECTED_ATTEMPTS: usize = 200;

impl Generator {
    fn weight(&mut self) -> i64 {
        self.rng.gen_range(self.params.min_weight..=self.params.max_weight)
    }

    /// `m` pairs drawn without replacement from `universe`, weighted when
    /// the task is.
    fn sample(&mut self, n: usize, universe: &[(usize, usize)], m: usize, directed: bool) -> Graph {
        let m = m.min(universe.len());
        let picks = index::sample(&mut self.rng, universe.len(), m);
        let mut edges = Vec::with_capacity(m);
        for i in picks.iter() {
            let (u, v) = universe[i];
            edges.push(if self.kind.weighted() { Edge::weighted(u, v, self.weight()) } else { Edge::new(u, v) });
        }
        Graph::new(directed, n, edges).expect("sampled pairs are valid")
    }

    fn random_graph(&mut self, n: usize, directed: bool) -> Graph {
        let m = GenParams { n, ..self.params }.edge_count();
        let universe = if directed { ordered_pairs(n) } else { unordered_pairs(n) };
        self.sample(n, &universe, m, directed)
    }

    fn connected_graph(&mut self) -> Result<Graph, HarnessError> {
        for _ in 0..CONNECTED_ATTEMPTS {
            let g = self.random_graph(self.params.n, false);
            if connectivity(&g)? == 1 {
                return Ok(g);
            }
        }
        Err(HarnessError::InvalidParams(format!(
            "no connected graph with n={} and density {} after {CONNECTED_ATTEMPTS} draws",
            self.params.n, self.params.density
        )))
    }

    /// A DAG: pairs `i < j` oriented along a random permutation.
    fn dag(&mut self) -> Graph {
        let n = self.params.n;
        let order = index::sample(&mut self.rng, n, n).into_vec();
        let universe: Vec<(usize, usize)> = unordered_pairs(n).into_iter().map(|(i, j)| (order[i], order[j])).collect();
        let m = self.params.edge_count();
        self.sample(n, &universe, m, true)
    }

    fn node(&mut self) -> usize {
        self.rng.gen_range(0..self.params.n)
    }

    fn distinct_pair(&mut self) -> (usize, usize) {
        let v = index::sample(&mut self.rng, self.params.n, 2).into_vec();
        (v[0], v[1])
    }

    fn build(&mut self) -> Result<Built, HarnessError> {
        let kind = self.kind;
        let directed = kind.directed();
        let mut query = None;
        let (g, question, gold): (Graph, String, String) = match kind {
            NodeCount | EdgeCount | TriangleCount | ComponentCount => {
                let g = self.random_graph(self.params.n, false);
                let (q, question) = match kind {
                    NodeCount => (LocalQuery::NodeCount, "How many nodes are in this graph?"),
                    EdgeCount => (LocalQuery::EdgeCount, "How many edges are in this graph?"),
                    TriangleCount => (LocalQuery::TriangleCount, "How many triangles are in this graph?"),
                    _ => {
                        let gold = connectivity(&g)?.to_string();
                        return Ok(self.finish(&g, "How many connected components are in this graph?".into(), gold, None));
                    }
                };
                let gold = oracle::local_query(&g, q)?.to_string();
                (g, question.into(), gold)
            }
            EdgeExistence => {
                let g = self.random_graph(self.params.n, false);
                let (u, v) = if g.edge_count() > 0 && self.rng.gen_bool(0.5) {
                    let e = g.edges()[self.rng.gen_range(0..g.edge_count())];
                    (e.u, e.v)
                } else {
                    self.distinct_pair()
                };
                query = Some(vec![u, v]);
                let gold = oracle::local_query(&g, LocalQuery::EdgeExistence(u, v))?.to_string();
                (g, format!("Is there an edge between node {u} and node {v}?"), gold)
            }
            NodeDegree => {
                let g = self.random_graph(self.params.n, false);
                let u = self.node();
                query = Some(vec![u]);
                let gold = oracle::local_query(&g, LocalQuery::Degree(u))?.to_string();
                (g, format!("What is the degree of node {u}?"), gold)
            }
            ConnectedNodes | Predecessors => {
                let g = self.random_graph(self.params.n, directed);
                let u = self.node();
                query = Some(vec![u]);
                let (q, what) = if kind == ConnectedNodes {
                    (LocalQuery::ConnectedNodes(u), format!("List all nodes directly connected to node {u}"))
                } else {
                    (LocalQuery::Predecessors(u), format!("List all nodes with an edge pointing to node {u}"))
                };
                let gold = none_if_empty(oracle::local_query(&g, q)?.to_string());
                (g, format!("{what} in ascending order, separated by spaces. If there are none, answer None."), gold)
            }
            CommonNeighbors | Jaccard => {
                let g = self.random_graph(self.params.n, false);
                let (u, v) = self.distinct_pair();
                query = Some(vec![u, v]);
                if kind == CommonNeighbors {
                    let gold = match oracle::local_query(&g, LocalQuery::CommonNeighbors(u, v))? {
                        OracleAnswer::NodeSet(s) => s.len().to_string(),
                        other => unreachable!("common neighbours returned {other:?}"),
                    };
                    (g, format!("How many common neighbors do node {u} and node {v} have?"), gold)
                } else {
                    let gold = oracle::local_query(&g, LocalQuery::Jaccard(u, v))?.to_string();
                    (
                        g,
                        format!(
                            "What is the Jaccard similarity between the neighbor sets of node {u} and node {v}? \
                             Give the value rounded to 6 decimal places."
                        ),
                        gold,
                    )
                }
            }
            Connectivity => {
                let g = self.random_graph(self.params.n, false);
                let (u, v) = self.distinct_pair();
                query = Some(vec![u, v]);
                let gold = oracle::connectivity_query(&g, ConnectivityQuery::Connected(u, v))?.to_string();
                (g, format!("Is there a path between node {u} and node {v}?"), gold)
            }
            Diameter => {
                let g = self.connected_graph()?;
                let gold = oracle::connectivity_query(&g, ConnectivityQuery::Diameter)?.to_string();
                (
                    g,
                    "What is the diameter of this graph, that is, the largest number of edges on a shortest path \
                     between any two nodes?"
                        .into(),
                    gold,
                )
            }
            MultiQueryDistance => {
                let g = self.random_graph(self.params.n, false);
                let mut pairs = Vec::new();
                let mut lines = Vec::new();
                for _ in 0..3 {
                    let (s, t) = self.distinct_pair();
                    lines.push(format!("node {s} to node {t}"));
                    pairs.extend([s, t]);
                }
                let gold = pairs
                    .chunks(2)
                    .map(|p| oracle::shortest_path(&g, p[0], p[1]).map(|a| a.distance.to_string()))
                    .collect::<Result<Vec<_>, _>>()?
                    .join("\n");
                query = Some(pairs);
                (
                    g,
                    format!(
                        "Give the weight of the shortest path for each of these queries: {}. \
                         Answer one query per line, in order, and answer -1 for an unreachable pair.",
                        lines.join("; ")
                    ),
                    gold,
                )
            }
            CycleCheck => {
                let g = if self.rng.gen_bool(0.5) { self.dag() } else { self.random_graph(self.params.n, true) };
                let gold = oracle::detect_cycle(&g).to_string();
                (g, "Is there a cycle in this graph?".into(), gold)
            }
            TopologicalSort => {
                let g = self.dag();
                let gold = oracle::topological_order(&g)?.to_string();
                (
                    g,
                    "Give a topological ordering of all nodes, as node numbers separated by spaces.".into(),
                    gold,
                )
            }
            ShortestPath | ShortestPathRoute => {
                let g = self.random_graph(self.params.n, false);
                let (s, t) = self.distinct_pair();
                query = Some(vec![s, t]);
                let answer = oracle::shortest_path(&g, s, t)?;
                if kind == ShortestPath {
                    (
                        g,
                        format!(
                            "Give the weight of the shortest path from node {s} to node {t}. \
                             If there is no path, answer -1."
                        ),
                        answer.distance.to_string(),
                    )
                } else {
                    let gold = answer.path.map_or_else(|| "-1".to_string(), |p| join(&p));
                    (
                        g,
                        format!(
                            "Give a shortest path from node {s} to node {t} as node numbers separated by spaces, \
                             starting with node {s}. If there is no path, answer -1."
                        ),
                        gold,
                    )
                }
            }
            MaxFlow => {
                let g = self.random_graph(self.params.n, true);
                let (s, t) = self.distinct_pair();
                query = Some(vec![s, t]);
                let gold = oracle::max_flow(&g, s, t)?.to_string();
                (g, format!("What is the maximum flow from node {s} to node {t}?"), gold)
            }
            Bipartite => {
                let g = if self.rng.gen_bool(0.5) {
                    let n = self.params.n;
                    let side: Vec<bool> = (0..n).map(|_| self.rng.gen_bool(0.5)).collect();
                    let cross: Vec<(usize, usize)> =
                        unordered_pairs(n).into_iter().filter(|&(u, v)| side[u] != side[v]).collect();
                    let m = self.params.edge_count();
                    self.sample(n, &cross, m, false)
                } else {
                    self.random_graph(self.params.n, false)
                };
                let gold = if oracle::bipartite(&g).bipartite { "Yes" } else { "No" }.to_string();
                (g, "Is this graph bipartite?".into(), gold)
            }
            HamiltonPath => {
                let g = self.random_graph(self.params.n, false);
                let gold = match oracle::hamilton_path(&g) {
                    OracleAnswer::Boolean { value: true, witness: Some(Witness::Path(p)) } => join(&p),
                    _ => "No".into(),
                };
                (
                    g,
                    "Is there a path that visits every node exactly once? If there is, give one such path as \
                     node numbers separated by spaces; otherwise answer No."
                        .into(),
                    gold,
                )
            }
            Pagerank => {
                let g = self.random_graph(self.params.n, true);
                let gold = oracle::pagerank(&g, 0.85, 3)?.argmax.to_string();
                (
                    g,
                    "Start every node with score 1/N and run 3 iterations of PageRank with damping factor 0.85; \
                     a node without outgoing edges spreads its score evenly over all nodes. Which node has the \
                     largest score? On a tie, answer the smallest node number."
                        .into(),
                    gold,
                )
            }
            MstWeight => {
                let g = self.connected_graph()?;
                let gold = oracle::mst_weight(&g)?.weight.to_string();
                (g, "What is the total weight of a minimum spanning tree of this graph?".into(), gold)
            }
            Mis | Mvc | MaxClique => {
                let g = self.random_graph(self.params.n, false);
                let (set, what) = match kind {
                    Mis => (oracle::exact_mis(&g)?, "a maximum independent set"),
                    Mvc => (oracle::exact_mvc(&g)?, "a minimum vertex cover"),
                    _ => (oracle::max_clique(&g)?, "a maximum clique"),
                };
                (g, format!("Find {what} of this graph. Answer with its nodes in ascending order, separated by spaces."), join(&set))
            }
            Mcs => return self.build_mcs(),
            SubgraphMatch => return self.build_subgraph_match(),
            Tsp => {
                let g = self.random_graph(self.params.n, false);
                let gold = match oracle::tsp_held_karp(&g)? {
                    oracle::TourAnswer { tour: Some(t), .. } => join(&t),
                    _ => "-1".into(),
                };
                (
                    g,
                    "Find the shortest route that starts at node 0, visits every node exactly once and returns to \
                     node 0. Answer with the visiting order as node numbers separated by spaces, starting with 0 \
                     and without repeating 0 at the end. If no such route exists, answer -1."
                        .into(),
                    gold,
                )
            }
        };
        Ok(self.finish(&g, question, gold, query))
    }

    fn finish(&self, g: &Graph, question: String, gold: String, query: Option<Vec<usize>>) -> Built {
        let (task, given) = phrasing(self.kind);
        let text = format!(
            "{task} {} {given} Q: The nodes are {}, and the edges are: {}. {question}",
            edge_legend(self.kind),
            render_node_range(g),
            render_edge_tuples(g.edges(), 0, g.is_directed()),
        );
        Built { text, gold, query, edge_count: g.edge_count() }
    }

    fn build_mcs(&mut self) -> Result<Built, HarnessError> {
        let g1 = self.random_graph(self.params.n, false);
        let g2 = self.random_graph(self.params.n, false);
        let gold = oracle::max_common_subgraph(&g1, &g2)?.to_string();
        let text = format!(
            "Find the maximum common induced subgraph of two undirected graphs. {} Given two graphs, you need to \
             output the number of nodes in their largest common induced subgraph. Q: Graph G1 has nodes {} and \
             edges: {}. Graph G2 has nodes {} and edges: {}. How many nodes does the maximum common induced \
             subgraph of G1 and G2 have?",
            edge_legend(Mcs),
            render_node_range(&g1),
            render_edge_tuples(g1.edges(), 0, false),
            render_node_range(&g2),
            render_edge_tuples(g2.edges(), 0, false),
        );
        Ok(Built { text, gold, query: None, edge_count: g1.edge_count() + g2.edge_count() })
    }

    fn build_subgraph_match(&mut self) -> Result<Built, HarnessError> {
        let host = self.random_graph(self.params.n, true);
        let k = (self.params.n / 3).max(2);
        let pattern = if self.rng.gen_bool(0.5) {
            // Relabelled induced subgraph of the host, so roughly half the
            // instances are positive.
            let chosen = index::sample(&mut self.rng, self.params.n, k).into_vec();
            let edges = host.edges().iter().filter_map(|e| {
                let a = chosen.iter().position(|&c| c == e.u)?;
                let b = chosen.iter().position(|&c| c == e.v)?;
                Some(Edge::new(a, b))
            });
            Graph::new(true, k, edges.collect::<Vec<_>>())?
        } else {
            self.random_graph(k, true)
        };
        let gold = oracle::subgraph_match(&pattern, &host, MatchMode::InducedIsomorphism)?.to_string();
        let text = format!(
            "Determine whether a small directed graph appears inside a larger one. {} Given a graph G and a \
             pattern graph G', you need to output Yes or No. Q: The nodes of G are {}, and the edges of G are: {}. \
             The nodes of G' are {}, and the edges of G' are: {}. Is G' isomorphic to an induced subgraph of G, \
             with every edge and every non-edge of G' preserved?",
            edge_legend(SubgraphMatch),
            render_node_range(&host),
            render_edge_tuples(host.edges(), 0, true),
            render_node_range(&pattern),
            render_edge_tuples(pattern.edges(), 0, true),
        );
        Ok(Built { text, gold, query: None, edge_count: host.edge_count() })
    }
}

fn connectivity(g: &Graph) -> Result<usize, HarnessError> {
    match oracle::connectivity_query(g, ConnectivityQuery::ComponentCount)? {
        OracleAnswer::Integer(c) => Ok(c as usize),
        other => unreachable!("component count returned {other:?}"),
    }
}

fn unordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

fn join(nodes: &[usize]) -> String {
    nodes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn none_if_empty(s: String) -> String {
    if s.is_empty() {
        "None".into()
    } else {
        s
    }
}

fn edge_legend(kind: TaskKind) -> &'static str {
    match (kind.directed(), kind.weighted()) {
        (false, false) => "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge.",
        (false, true) => {
            "In an undirected graph, (i,j,k) means that node i and node j are connected with an undirected edge with weight k."
        }
        (true, false) => "In a directed graph, (i->j) means that there is a directed edge from node i to node j.",
        (true, true) => {
            "In a directed graph, (i->j,k) means that there is a directed edge from node i to node j with capacity k."
        }
    }
}

/// Opening sentence and the "Given ..." sentence for each task.
fn phrasing(kind: TaskKind) -> (&'static str, &'static str) {
    match kind {
        NodeCount => ("Count the nodes of an undirected graph.", "Given a graph, you need to output the number of nodes."),
        EdgeCount => ("Count the edges of an undirected graph.", "Given a graph, you need to output the number of edges."),
        EdgeExistence => (
            "Determine whether two nodes of an undirected graph are joined by an edge.",
            "Given a graph and a pair of nodes, you need to output Yes or No.",
        ),
        NodeDegree => (
            "Find the degree of a node in an undirected graph.",
            "Given a graph and a node, you need to output its degree.",
        ),
        ConnectedNodes => (
            "Find the neighbors of a node in an undirected graph.",
            "Given a graph and a node, you need to list the nodes adjacent to it.",
        ),
        CommonNeighbors => (
            "Count the common neighbors of two nodes in an undirected graph.",
            "Given a graph and a pair of nodes, you need to output the number of nodes adjacent to both.",
        ),
        Jaccard => (
            "Compute the Jaccard similarity of two nodes in an undirected graph.",
            "Given a graph and a pair of nodes, you need to output the size of the intersection of their neighbor \
             sets divided by the size of the union.",
        ),
        TriangleCount => (
            "Count the triangles of an undirected graph.",
            "Given a graph, you need to output the number of sets of three mutually adjacent nodes.",
        ),
        Predecessors => (
            "Find the predecessors of a node in a directed graph.",
            "Given a graph and a node, you need to list the nodes with an edge into it.",
        ),
        Connectivity => (
            "Determine whether two nodes are connected in an undirected graph.",
            "Given a graph and a pair of nodes, you need to output Yes or No, indicating whether the node i and \
             node j are connected.",
        ),
        ComponentCount => (
            "Count the connected components of an undirected graph.",
            "Given a graph, you need to output the number of connected components.",
        ),
        Diameter => (
            "Find the diameter of a connected undirected graph.",
            "Given a graph, you need to output its diameter.",
        ),
        MultiQueryDistance => (
            "Answer several shortest path queries on an undirected graph.",
            "Given a graph and a list of node pairs, you need to output the shortest path weight for each pair.",
        ),
        CycleCheck => (
            "Determine whether a directed graph contains a cycle.",
            "Given a graph, you need to output Yes or No, indicating whether there is a cycle in the graph.",
        ),
        TopologicalSort => (
            "Find a topological ordering of a directed acyclic graph.",
            "Given a graph, you need to output an order of the nodes in which every edge points forward.",
        ),
        ShortestPath => (
            "Find the shortest path between two nodes in an undirected graph.",
            "Given a graph and a pair of nodes, you need to output the shortest path between the two nodes.",
        ),
        ShortestPathRoute => (
            "Find the shortest path between two nodes in an undirected graph.",
            "Given a graph and a pair of nodes, you need to output the nodes on a shortest path between them.",
        ),
        MaxFlow => (
            "Find the maximum flow between two nodes in a directed graph.",
            "Given a graph and a pair of nodes, you need to output the maximum flow from the first node to the second.",
        ),
        Bipartite => (
            "Determine whether an undirected graph is bipartite.",
            "Given a graph, you need to output Yes or No, indicating whether the nodes can be split into two sets \
             with every edge running between the sets.",
        ),
        HamiltonPath => (
            "Determine whether or not there is a Hamiltonian path in an undirected graph.",
            "Given a graph, you need to output a Hamiltonian path if one exists, or No.",
        ),
        Pagerank => (
            "Run PageRank on a directed graph.",
            "Given a graph, you need to output the node with the highest PageRank score.",
        ),
        MstWeight => (
            "Find the minimum spanning tree of a connected undirected graph.",
            "Given a graph, you need to output the total weight of a minimum spanning tree.",
        ),
        Mis => (
            "Find a maximum independent set of an undirected graph.",
            "Given a graph, you need to output a largest set of nodes no two of which are adjacent.",
        ),
        Mvc => (
            "Find a minimum vertex cover of an undirected graph.",
            "Given a graph, you need to output a smallest set of nodes touching every edge.",
        ),
        MaxClique => (
            "Find a maximum clique of an undirected graph.",
            "Given a graph, you need to output a largest set of mutually adjacent nodes.",
        ),
        Tsp => (
            "Solve the traveling salesman problem on an undirected graph.",
            "Given a graph, you need to output a cheapest route through all nodes that returns to its start.",
        ),
        Mcs | SubgraphMatch => unreachable!("two-graph tasks render their own text"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_text;

    #[test]
    fn names_round_trip() {
        for kind in TaskKind::ALL {
            assert_eq!(kind.name().parse::<TaskKind>().unwrap(), kind);
            assert_eq!(serde_json::to_string(&kind).unwrap(), format!("\"{}\"", kind.name()));
        }
        assert!(matches!("nope".parse::<TaskKind>(), Err(HarnessError::UnknownTask(_))));
    }

    #[test]
    fn exact_edge_count() {
        let params = GenParams { n: 50, density: 0.3, min_weight: 1, max_weight: 100 };
        assert_eq!(params.edge_count(), 367);
        let spec = TaskSpec::new(ShortestPath).with_n(50).with_density(0.3);
        for inst in generate_instances(&spec, 3, 7).unwrap() {
            assert_eq!(inst.meta_u64("edge_count"), Some(367));
            let g = parse_graph_text(&inst.problem_text, false, true).unwrap();
            assert_eq!(g.edge_count(), 367);
            assert!(g.edges().iter().all(|e| (1..=100).contains(&e.weight.unwrap())));
        }
    }

    #[test]
    fn deterministic() {
        for kind in TaskKind::ALL {
            let spec = TaskSpec::new(kind);
            let a = generate_instances(&spec, 3, 11).unwrap();
            let b = generate_instances(&spec, 3, 11).unwrap();
            assert_eq!(super::super::render_dataset(&a), super::super::render_dataset(&b), "{kind}");
            assert!(a.iter().all(|i| i.gold_answer.as_deref().is_some_and(|g| !g.is_empty())));
        }
    }

    #[test]
    fn instance_seed_is_offset() {
        let spec = TaskSpec::new(MaxFlow);
        let batch = generate_instances(&spec, 4, 100).unwrap();
        let single = generate_instances(&spec, 1, 103).unwrap();
        assert_eq!(batch[3].problem_text, single[0].problem_text);
    }

    #[test]
    fn size_bound_surfaces() {
        let spec = TaskSpec::new(Tsp).with_n(21);
        assert!(matches!(generate_instances(&spec, 1, 0), Err(HarnessError::Oracle(_))));
    }

    #[test]
    fn bad_params() {
        assert!(generate_instances(&TaskSpec::new(Mis).with_n(1), 1, 0).is_err());
        assert!(generate_instances(&TaskSpec::new(Mis).with_density(0.0), 1, 0).is_err());
        assert!(generate_instances(&TaskSpec::new(Mis).with_density(1.5), 1, 0).is_err());
        assert!(generate_instances(&TaskSpec::for_task_id("custom"), 1, 0).is_err());
    }

    #[test]
    fn shortest_path_text_parses() {
        let inst = &generate_instances(&TaskSpec::new(ShortestPath), 1, 5).unwrap()[0];
        assert!(inst.problem_text.contains("(i,j,k) means that node i and node j are connected"));
        let g = parse_graph_text(&inst.problem_text, false, true).unwrap();
        assert_eq!(g.node_count(), 10);
        let q = inst.meta_nodes("query").unwrap();
        let d = oracle::shortest_path(&g, q[0], q[1]).unwrap().distance;
        assert_eq!(inst.gold_answer.as_deref(), Some(d.to_string().as_str()));
    }
}
