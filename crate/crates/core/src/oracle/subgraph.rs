use super::{bounds, OracleAnswer, OracleError, Witness};
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// Edges and non-edges of the pattern are both preserved.
    InducedIsomorphism,
    /// Only edges are preserved.
    Monomorphism,
}

struct Matcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    mode: MatchMode,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn consistent(&self, p: usize, h: usize, mapped: &[usize]) -> bool {
        mapped.iter().all(|&q| {
            let hq = self.map[q];
            let pairs = [(self.pattern.has_edge(p, q), self.host.has_edge(h, hq)),
                (self.pattern.has_edge(q, p), self.host.has_edge(hq, h))];
            pairs.iter().all(|&(pe, he)| match self.mode {
                MatchMode::Monomorphism => !pe || he,
                MatchMode::InducedIsomorphism => pe == he,
            })
        })
    }

    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let p_out = self.pattern.out_degree(p);
        let p_in = self.pattern.in_neighbors(p).len();
        for h in 0..self.host.node_count() {
            if self.used[h]
                || self.host.out_degree(h) < p_out
                || self.host.in_neighbors(h).len() < p_in
                || !self.consistent(p, h, &self.order[..depth])
            {
                continue;
            }
            self.map[p] = h;
            self.used[h] = true;
            if self.search(depth + 1) {
                return true;
            }
            self.used[h] = false;
        }
        false
    }
}

/// Whether `pattern` embeds into `host` under `mode`. The witness maps each
/// pattern node to a host node.
pub fn subgraph_match(pattern: &Graph, host: &Graph, mode: MatchMode) -> Result<OracleAnswer, OracleError> {
    if pattern.is_directed() != host.is_directed() {
        return Err(OracleError::ModeMismatch {
            op: "subgraph_match",
            required: "pattern and host of the same directedness",
        });
    }
    if host.node_count() > bounds::SUBGRAPH_HOST {
        return Err(OracleError::SizeBound {
            op: "subgraph_match",
            limit: bounds::SUBGRAPH_HOST,
            got: host.node_count(),
        });
    }
    let no = Ok(OracleAnswer::Boolean { value: false, witness: None });
    if pattern.node_count() > host.node_count() {
        return no;
    }
    // Most constrained pattern nodes first; ties by index.
    let mut order: Vec<usize> = (0..pattern.node_count()).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(pattern.out_degree(p) + pattern.in_neighbors(p).len()));
    let mut m = Matcher {
        pattern,
        host,
        mode,
        order,
        map: vec![usize::MAX; pattern.node_count()],
        used: vec![false; host.node_count()],
    };
    if !m.search(0) {
        return no;
    }
    let mapping = m.map.iter().enumerate().map(|(p, &h)| (p, h)).collect();
    Ok(OracleAnswer::Boolean { value: true, witness: Some(Witness::Mapping(mapping)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::*;

    fn holds(p: &Graph, h: &Graph, mode: MatchMode) -> bool {
        matches!(subgraph_match(p, h, mode).unwrap(), OracleAnswer::Boolean { value: true, .. })
    }

    #[test]
    fn path_in_triangle() {
        assert!(holds(&path(3), &complete(3), MatchMode::Monomorphism));
        assert!(!holds(&path(3), &complete(3), MatchMode::InducedIsomorphism));
    }

    #[test]
    fn single_edge() {
        let host = Graph::from_pairs(false, 4, &[(2, 3)]).unwrap();
        for mode in [MatchMode::Monomorphism, MatchMode::InducedIsomorphism] {
            assert!(holds(&path(2), &host, mode));
        }
    }

    #[test]
    fn directed_orientation_matters() {
        let pattern = Graph::from_pairs(true, 2, &[(0, 1)]).unwrap();
        let host = Graph::from_pairs(true, 3, &[(2, 1)]).unwrap();
        let ans = subgraph_match(&pattern, &host, MatchMode::InducedIsomorphism).unwrap();
        assert_eq!(ans, OracleAnswer::Boolean { value: true, witness: Some(Witness::Mapping(vec![(0, 2), (1, 1)])) });
        let both = Graph::from_pairs(true, 2, &[(0, 1), (1, 0)]).unwrap();
        assert!(holds(&pattern, &both, MatchMode::Monomorphism));
        assert!(!holds(&pattern, &both, MatchMode::InducedIsomorphism));
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            subgraph_match(&path(2), &path(17), MatchMode::Monomorphism),
            Err(OracleError::SizeBound { .. })
        ));
        assert!(!holds(&path(4), &path(3), MatchMode::Monomorphism));
    }
}
