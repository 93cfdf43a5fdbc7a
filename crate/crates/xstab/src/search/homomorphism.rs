//! Graph homomorphism with per-target-vertex fiber capacities.

use crate::graph::{Graph, VertexSet};

/// Finds a homomorphism `pattern -> target` in which at most `caps[t]`
/// pattern vertices map onto target vertex `t`. Returns the image vector.
///
/// Adjacent pattern vertices land on adjacent (hence distinct) targets;
/// non-adjacent ones may share a fiber. With all caps = 1 this is exactly
/// non-induced subgraph containment of `pattern` in `target`.
pub fn hom_with_capacities(pattern: &Graph, target: &Graph, caps: &[usize]) -> Option<Vec<usize>> {
    assert_eq!(caps.len(), target.vertex_count(), "one capacity per target vertex");
    let pn = pattern.vertex_count();
    let total: usize = caps.iter().sum();
    if total < pn {
        return None;
    }
    let mut map = vec![usize::MAX; pn];
    let mut remaining = caps.to_vec();
    let mut slack = total;
    if assign(pattern, target, &mut map, &mut remaining, &mut slack, 0) {
        Some(map)
    } else {
        None
    }
}

fn assign(
    pattern: &Graph,
    target: &Graph,
    map: &mut [usize],
    remaining: &mut [usize],
    slack: &mut usize,
    placed: usize,
) -> bool {
    let pn = pattern.vertex_count();
    if placed == pn {
        return true;
    }
    if *slack < pn - placed {
        return false; // not enough fiber room for the rest
    }
    let mut next = usize::MAX;
    let mut best = (0usize, 0usize);
    for p in 0..pn {
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

    let mut candidates = VertexSet::full(target.vertex_count());
    for q in pattern.neighbors(next).iter() {
        if map[q] != usize::MAX {
            candidates.intersect_with(target.neighbors(map[q]));
        }
    }

    for t in candidates.iter() {
        if remaining[t] == 0 {
            continue;
        }
        map[next] = t;
        remaining[t] -= 1;
        *slack -= 1;
        if assign(pattern, target, map, remaining, slack, placed + 1) {
            return true;
        }
        *slack += 1;
        remaining[t] += 1;
        map[next] = usize::MAX;
    }
    false
}
