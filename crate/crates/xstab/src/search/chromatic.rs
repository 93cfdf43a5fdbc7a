//! Exact chromatic number via saturation-ordered branch and bound.

use crate::graph::Graph;

/// Exact chromatic number. Empty-edge graphs report 1 (0 for no vertices).
///
/// Worst case is exponential; intended for the small graphs this crate
/// classifies and verifies (forbidden patterns, near-extremal enumerations).
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(g).len();
    let upper = greedy_coloring_count(g);
    for k in lower..upper {
        if is_k_colorable(g, k) {
            return k;
        }
    }
    upper
}

/// Exact k-colorability test (equivalently: can `g` be made k-partite
/// without deletions).
pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return n == 0;
    }
    if k >= n {
        return true;
    }
    let mut colors = vec![usize::MAX; n];
    color_rec(g, k, &mut colors, 0)
}

fn color_rec(g: &Graph, k: usize, colors: &mut [usize], used: usize) -> bool {
    // Most saturated uncolored vertex first; ties by degree, then id.
    let mut pick = None;
    let mut best = (0usize, 0usize);
    for v in 0..g.vertex_count() {
        if colors[v] != usize::MAX {
            continue;
        }
        let mut mask = 0u64;
        for w in g.neighbors(v).iter() {
            if colors[w] != usize::MAX {
                mask |= 1 << colors[w];
            }
        }
        let key = (mask.count_ones() as usize, g.degree(v));
        if pick.is_none() || key > best {
            best = key;
            pick = Some((v, mask));
        }
    }
    let Some((v, mask)) = pick else {
        return true; // everything colored
    };
    // New colors are interchangeable: allow at most one fresh color.
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if mask >> c & 1 == 0 {
            colors[v] = c;
            if color_rec(g, k, colors, used.max(c + 1)) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

/// A maximal clique found greedily by descending degree; lower bound witness.
fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique
}

/// Color count of a greedy saturation-ordered coloring; upper bound.
fn greedy_coloring_count(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut colors = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let mut pick = None;
        let mut best = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let mut mask = 0u64;
            for w in g.neighbors(v).iter() {
                if colors[w] != usize::MAX {
                    mask |= 1 << colors[w];
                }
            }
            let key = (mask.count_ones() as usize, g.degree(v));
            if pick.is_none() || key > best {
                best = key;
                pick = Some((v, mask));
            }
        }
        let (v, mask) = pick.expect("an uncolored vertex remains");
        let c = (0..).find(|&c| mask >> c & 1 == 0).expect("free color exists");
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}
