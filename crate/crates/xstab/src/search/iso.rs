//! Small-graph isomorphism testing by backtracking.
//!
//! Intended for the sizes this crate deals with when deduplicating
//! enumeration output (n <= ~12); no canonical-form machinery.

use crate::graph::Graph;

/// Tests whether `a` and `b` are isomorphic.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &mut map, &mut used, 0)
}

/// Maps vertices of `a` in index order; adjacency to all previously mapped
/// vertices must match exactly (edge <-> edge), so a completed map is an
/// isomorphism.
fn extend(a: &Graph, b: &Graph, map: &mut [usize], used: &mut [bool], v: usize) -> bool {
    let n = a.vertex_count();
    if v == n {
        return true;
    }
    'cand: for t in 0..n {
        if used[t] || a.degree(v) != b.degree(t) {
            continue;
        }
        for u in 0..v {
            if a.has_edge(v, u) != b.has_edge(t, map[u]) {
                continue 'cand;
            }
        }
        map[v] = t;
        used[t] = true;
        if extend(a, b, map, used, v + 1) {
            return true;
        }
        used[t] = false;
        map[v] = usize::MAX;
    }
    false
}
