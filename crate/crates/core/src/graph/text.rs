//! Benchmark-style rendering of graph data inside problem text.

use super::{Edge, Graph};

/// `numbered from a to b` for the graph's numbering.
pub fn render_node_range(g: &Graph) -> String {
    let b = g.index_base();
    format!("numbered from {} to {}", b, (b + g.node_count()).saturating_sub(1))
}

/// Space-separated edge tuples: `(u,v)`, `(u,v,w)`, or with `arrow` set
/// `(u->v)` and `(u->v,w)`.
pub fn render_edge_tuples<'a>(
    edges: impl IntoIterator<Item = &'a Edge>,
    index_base: usize,
    arrow: bool,
) -> String {
    let sep = if arrow { "->" } else { "," };
    edges
        .into_iter()
        .map(|e| {
            let (u, v) = (e.u + index_base, e.v + index_base);
            match e.weight {
                Some(w) => format!("({u}{sep}{v},{w})"),
                None => format!("({u}{sep}{v})"),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
