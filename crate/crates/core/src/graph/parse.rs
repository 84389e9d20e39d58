//! Extraction of graph data from benchmark-style problem text.

use std::collections::HashMap;
use std::sync::LazyLock;

use regex::Regex;

use super::{Edge, Graph, GraphError};

static NUMBERED_RANGE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)numbered\s+from\s+(-?\d+)\s+to\s+(-?\d+)").unwrap());
static NODES_RANGE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)\bnodes?\s+(?:are\s+)?(?:from\s+)?(-?\d+)\s+to\s+(-?\d+)").unwrap()
});
static TUPLE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\(([^()]*)\)").unwrap());

/// Replaces whitespace inside a node name with `_` after trimming.
/// Every other character, including `.`, is kept.
pub fn normalize_label(name: &str) -> Result<String, GraphError> {
    let trimmed = name.trim();
    if trimmed.is_empty() {
        return Err(GraphError::EmptyLabel);
    }
    Ok(trimmed.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect())
}

fn declared_range(text: &str) -> Option<(i64, i64)> {
    let caps = NUMBERED_RANGE.captures(text).or_else(|| NODES_RANGE.captures(text))?;
    Some((caps[1].parse().ok()?, caps[2].parse().ok()?))
}

struct RawTuple<'a> {
    raw: &'a str,
    parts: Vec<&'a str>,
}

fn is_placeholder(parts: &[&str], following: &str) -> bool {
    let letter = |s: &str| s.len() == 1 && s.chars().all(|c| c.is_ascii_lowercase());
    following.trim_start().starts_with("means") || parts.iter().take(2).all(|p| letter(p))
}

fn tuples(text: &str) -> Vec<RawTuple<'_>> {
    TUPLE
        .captures_iter(text)
        .filter_map(|caps| {
            let whole = caps.get(0).unwrap();
            let inner = caps.get(1).unwrap().as_str();
            if !inner.contains(',') && !inner.contains("->") {
                return None;
            }
            let parts: Vec<&str> = inner.split([',']).flat_map(|p| p.split("->")).map(str::trim).collect();
            if is_placeholder(&parts, &text[whole.end()..]) {
                return None;
            }
            Some(RawTuple { raw: whole.as_str(), parts })
        })
        .collect()
}

fn check_arity(found: &[(usize, &str)], weighted: bool) -> Result<(), GraphError> {
    let expected = if weighted { 3 } else { 2 };
    if let Some(&(_, raw)) = found.iter().find(|(a, _)| *a != 2 && *a != 3) {
        return Err(GraphError::MalformedTuple { tuple: raw.to_string(), expected });
    }
    let has2 = found.iter().any(|(a, _)| *a == 2);
    let has3 = found.iter().any(|(a, _)| *a == 3);
    if has2 && has3 {
        return Err(GraphError::MixedWeights);
    }
    if let Some(&(_, raw)) = found.iter().find(|(a, _)| *a != expected) {
        return Err(GraphError::MalformedTuple { tuple: raw.to_string(), expected });
    }
    Ok(())
}

fn parse_weight(t: &RawTuple<'_>) -> Result<Option<i64>, GraphError> {
    match t.parts.get(2) {
        None => Ok(None),
        Some(w) => w
            .parse()
            .map(Some)
            .map_err(|_| GraphError::MalformedTuple { tuple: t.raw.to_string(), expected: 3 }),
    }
}

/// Parses a graph out of problem text.
///
/// With a declared range ("numbered from a to b", "nodes a to b") nodes are
/// integers in that range and tuples with non-integer endpoints are treated
/// as prose or placeholders. Without one, tuple endpoints are node names,
/// indexed in order of first appearance. Tuples followed by "means" and
/// tuples of single lowercase letters, such as `(i,j)`, are placeholders.
/// Components may be separated by `,` or `->`.
pub fn parse_graph_text(text: &str, directed: bool, weighted: bool) -> Result<Graph, GraphError> {
    match declared_range(text) {
        Some((low, high)) => parse_numbered(text, low, high, directed, weighted),
        None => parse_named(text, directed, weighted),
    }
}

fn parse_numbered(
    text: &str,
    low: i64,
    high: i64,
    directed: bool,
    weighted: bool,
) -> Result<Graph, GraphError> {
    if high < low {
        return Err(GraphError::InvalidRange { low, high });
    }
    let numeric: Vec<RawTuple<'_>> = tuples(text)
        .into_iter()
        .filter(|t| t.parts.len() >= 2 && t.parts[..2].iter().all(|p| p.parse::<i64>().is_ok()))
        .collect();
    let arities: Vec<(usize, &str)> = numeric.iter().map(|t| (t.parts.len(), t.raw)).collect();
    check_arity(&arities, weighted)?;

    let index = |s: &str| -> Result<usize, GraphError> {
        let node: i64 = s.parse().expect("filtered to integers");
        if node < low || node > high {
            return Err(GraphError::NodeOutOfRange { node, low, high });
        }
        Ok((node - low) as usize)
    };
    let mut edges = Vec::with_capacity(numeric.len());
    for t in &numeric {
        edges.push(Edge { u: index(t.parts[0])?, v: index(t.parts[1])?, weight: parse_weight(t)? });
    }
    let node_count = (high - low + 1) as usize;
    let base = usize::try_from(low).unwrap_or(0);
    Ok(Graph::new(directed, node_count, edges)?.with_index_base(base))
}

fn parse_named(text: &str, directed: bool, weighted: bool) -> Result<Graph, GraphError> {
    let raw = tuples(text);
    let arities: Vec<(usize, &str)> = raw.iter().map(|t| (t.parts.len(), t.raw)).collect();
    check_arity(&arities, weighted)?;

    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut intern = |name: &str| -> Result<usize, GraphError> {
        let name = normalize_label(name)?;
        Ok(*ids.entry(name.clone()).or_insert_with(|| {
            names.push(name);
            names.len() - 1
        }))
    };
    let mut edges = Vec::with_capacity(raw.len());
    for t in &raw {
        let u = intern(t.parts[0])?;
        let v = intern(t.parts[1])?;
        edges.push(Edge { u, v, weight: parse_weight(t)? });
    }
    let n = names.len();
    Graph::new(directed, n, edges)?.with_labels(names)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const SHORTEST_PATH_TEXT: &str = "Find the shortest path between two nodes in an undirected graph. In an undirected graph, (i,j,k) means that node i and node j are connected with an undirected edge with weight k. Given a graph and a pair of nodes, you need to output the shortest path between the two nodes. Q: The nodes are numbered from 0 to 9, and the edges are: (0,4,2) (0,8,1) (0,7,7) (0,6,3) (0,3,1) (3,4,4) (3,7,7) (3,8,1) (3,6,10) (4,5,3) (5,6,3) (6,8,1). Give the weight of the shortest path from node 8 to node 5.";

    #[test]
    fn parses_weighted_example() {
        let g = parse_graph_text(SHORTEST_PATH_TEXT, false, true).unwrap();
        assert_eq!(g.node_count(), 10);
        assert_eq!(g.edge_count(), 12);
        assert!(!g.is_directed());
        assert_eq!(g.weight(6, 8), Some(1));
        assert_eq!(g.weight(3, 6), Some(10));
    }

    #[test]
    fn parses_spaced_unweighted_tuples() {
        let text = "Determine whether or not there is a Hamiltonian path in an undirected graph. In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. Q: The nodes are numbered from 0 to 4, and the edges are: (0, 1) (0, 3) (0, 4) (0, 2) (1, 3) (3, 4). Is there a Hamiltonian path in this graph?";
        let g = parse_graph_text(text, false, false).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (5, 6));
        assert!(!g.is_weighted());
    }

    #[test]
    fn empty_edge_list() {
        let g = parse_graph_text("nodes 0 to 3, edges:", false, false).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (4, 0));
    }

    #[test]
    fn one_based_range_records_offset() {
        let g = parse_graph_text("The nodes are numbered from 1 to 3: (1,2) (3,2)", false, false).unwrap();
        assert_eq!(g.index_base(), 1);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn arrow_tuples() {
        let g = parse_graph_text("nodes 0 to 2: (0->1) (2->1)", true, false).unwrap();
        assert!(g.has_edge(2, 1) && !g.has_edge(1, 2));
        let g = parse_graph_text("nodes 0 to 2: (0->1,7)", true, true).unwrap();
        assert_eq!(g.weight(0, 1), Some(7));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_graph_text("nodes 0 to 3: (0,1,2,3)", false, true),
            Err(GraphError::MalformedTuple { .. })
        ));
        assert!(matches!(
            parse_graph_text("nodes 0 to 3: (0,5)", false, false),
            Err(GraphError::NodeOutOfRange { node: 5, .. })
        ));
        assert_eq!(
            parse_graph_text("nodes 0 to 3: (0,1) (1,2,4)", false, true).unwrap_err(),
            GraphError::MixedWeights
        );
        assert!(matches!(
            parse_graph_text("nodes 0 to 3: (0,1)", false, true),
            Err(GraphError::MalformedTuple { expected: 3, .. })
        ));
    }

    #[test]
    fn named_nodes_in_first_appearance_order() {
        let text = "Flights: (New York, Boston, 3) (Boston, St. Louis, 5) (New York, St. Louis, 9). Example edge (u,v,w) is not real.";
        let g = parse_graph_text(text, false, true).unwrap();
        assert_eq!(g.labels().unwrap(), &["New_York", "Boston", "St._Louis"]);
        assert_eq!(g.weight(0, 2), Some(9));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn label_normalization() {
        assert_eq!(normalize_label("New York").unwrap(), "New_York");
        assert_eq!(normalize_label("a.b").unwrap(), "a.b");
        assert_eq!(normalize_label("  x ").unwrap(), "x");
        assert_eq!(normalize_label("   "), Err(GraphError::EmptyLabel));
    }
}
