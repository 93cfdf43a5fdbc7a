//! Non-induced subgraph embedding by backtracking.

use crate::graph::{Graph, VertexSet};

/// Injective map `pattern vertex -> host vertex` preserving every pattern edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    map: Vec<usize>,
}

impl EmbeddingWitness {
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Re-checks injectivity and edge preservation against the given pair.
    pub fn verify(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.vertex_count() {
            return false;
        }
        let mut seen = VertexSet::new(host.vertex_count());
        for &h in &self.map {
            if h >= host.vertex_count() || seen.contains(h) {
                return false;
            }
            seen.insert(h);
        }
        pattern
            .edges()
            .iter()
            .all(|&(p, q)| host.has_edge(self.map[p], self.map[q]))
    }
}

/// Finds a copy of `pattern` in `host` (as a not necessarily induced
/// subgraph). Deterministic; returns the first witness in search order.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Option<EmbeddingWitness> {
    if pattern.vertex_count() > host.vertex_count()
        || pattern.edge_count() > host.edge_count()
        || !degree_dominated(pattern, host)
    {
        return None;
    }
    let mut map = vec![usize::MAX; pattern.vertex_count()];
    let mut used = VertexSet::new(host.vertex_count());
    if embed(host, pattern, &mut map, &mut used, 0) {
        Some(EmbeddingWitness { map })
    } else {
        None
    }
}

/// Does `host` contain a copy of `pattern` that covers the host edge `(u, v)`?
///
/// Used by enumeration to detect copies created by a single edge insertion.
pub fn contains_subgraph_using_edge(host: &Graph, pattern: &Graph, edge: (usize, usize)) -> bool {
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() == 0 {
        return false;
    }
    let (u, v) = edge;
    debug_assert!(host.has_edge(u, v));
    for &(p, q) in &pattern.edges() {
        for (a, b) in [(p, q), (q, p)] {
            if pattern.degree(a) > host.degree(u) || pattern.degree(b) > host.degree(v) {
                continue;
            }
            let mut map = vec![usize::MAX; pattern.vertex_count()];
            let mut used = VertexSet::new(host.vertex_count());
            map[a] = u;
            map[b] = v;
            used.insert(u);
            used.insert(v);
            if embed(host, pattern, &mut map, &mut used, 2) {
                return true;
            }
        }
    }
    false
}

/// Sorted-degree dominance: the i-th largest pattern degree cannot exceed
/// the i-th largest host degree in any embedding.
fn degree_dominated(pattern: &Graph, host: &Graph) -> bool {
    let pd = pattern.degree_sequence();
    let hd = host.degree_sequence();
    pd.iter().zip(hd.iter()).all(|(p, h)| p <= h)
}

fn embed(
    host: &Graph,
    pattern: &Graph,
    map: &mut [usize],
    used: &mut VertexSet,
    placed: usize,
) -> bool {
    if placed == pattern.vertex_count() {
        return true;
    }
    // Next pattern vertex: most already-placed neighbors, then highest
    // degree, then lowest id. Keeps candidate sets small.
    let mut next = usize::MAX;
    let mut best = (0usize, 0usize);
    for p in 0..pattern.vertex_count() {
        if map[p] != usize::MAX {
            continue;
        }
        let anchored = pattern.neighbors(p).iter().filter(|&q| map[q] != usize::MAX).count();
        let key = (anchored, pattern.degree(p));
        if next == usize::MAX || key > best {
            best = key;
            next = p;
        }
    }

    let mut candidates = VertexSet::full(host.vertex_count());
    for q in pattern.neighbors(next).iter() {
        if map[q] != usize::MAX {
            candidates.intersect_with(host.neighbors(map[q]));
        }
    }
    candidates.subtract(used);

    let need = pattern.degree(next);
    for h in candidates.iter() {
        if host.degree(h) < need {
            continue;
        }
        map[next] = h;
        used.insert(h);
        if embed(host, pattern, map, used, placed + 1) {
            return true;
        }
        used.remove(h);
        map[next] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::mycielskian;

    /// Oracle: enumerate all injective maps and test edge preservation.
    fn contains_oracle(host: &Graph, pattern: &Graph) -> bool {
        let hn = host.vertex_count();
        let pn = pattern.vertex_count();
        if pn > hn {
            return false;
        }
        let mut map = vec![usize::MAX; pn];
        fn rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, i: usize) -> bool {
            if i == map.len() {
                return pattern
                    .edges()
                    .iter()
                    .all(|&(p, q)| host.has_edge(map[p], map[q]));
            }
            for h in 0..host.vertex_count() {
                if map[..i].contains(&h) {
                    continue;
                }
                map[i] = h;
                if rec(host, pattern, map, i + 1) {
                    return true;
                }
            }
            map[i] = usize::MAX;
            false
        }
        rec(host, pattern, &mut map, 0)
    }

    #[test]
    fn fixed_examples() {
        let w = contains_subgraph(&Graph::complete(5), &Graph::complete(4)).unwrap();
        assert!(w.verify(&Graph::complete(5), &Graph::complete(4)));
        assert!(contains_subgraph(&Graph::cycle(5), &Graph::complete(3)).is_none());
        let mk3 = mycielskian(&Graph::complete(3));
        assert!(contains_subgraph(&mk3, &Graph::complete(4)).is_none());
    }

    #[test]
    fn empty_pattern_embeds() {
        assert!(contains_subgraph(&Graph::empty(3), &Graph::empty(0)).is_some());
        assert!(contains_subgraph(&Graph::empty(2), &Graph::empty(3)).is_none());
    }

    #[test]
    fn matches_oracle_on_random_pairs() {
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            state
        };
        for _ in 0..150 {
            let hn = 4 + (next() % 4) as usize; // 4..=7
            let pn = 2 + (next() % 3) as usize; // 2..=4
            let mut host = Graph::empty(hn);
            for u in 0..hn {
                for v in (u + 1)..hn {
                    if next() % 2 == 0 {
                        host.add_edge(u, v);
                    }
                }
            }
            let mut pattern = Graph::empty(pn);
            for u in 0..pn {
                for v in (u + 1)..pn {
                    if next() % 3 != 0 {
                        pattern.add_edge(u, v);
                    }
                }
            }
            let got = contains_subgraph(&host, &pattern);
            assert_eq!(got.is_some(), contains_oracle(&host, &pattern));
            if let Some(w) = got {
                assert!(w.verify(&host, &pattern));
            }
        }
    }

    #[test]
    fn anchored_search_requires_the_edge() {
        // Host: triangle 0-1-2 plus pendant edge 2-3. K_3 copies use only
        // triangle edges, so anchoring at (2,3) must fail.
        let host = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let k3 = Graph::complete(3);
        assert!(contains_subgraph_using_edge(&host, &k3, (0, 1)));
        assert!(!contains_subgraph_using_edge(&host, &k3, (2, 3)));
    }
}
