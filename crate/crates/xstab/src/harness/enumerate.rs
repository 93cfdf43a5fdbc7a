//! Exhaustive and sampled generation of pattern-free graphs whose edge
//! count sits within a fixed deficit of the k-partite maximum.

use std::cmp::Reverse;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{turan_edge_count, Graph};
use crate::harness::HarnessLimits;
use crate::search::{are_isomorphic, contains_subgraph, contains_subgraph_using_edge};
use crate::solvers::max_pattern_free_edges;

/// Every labeled graph on n vertices that avoids `forbidden` (as a
/// subgraph) and has at least `t_k(n) - f` edges, sorted by descending edge
/// count. Walks a delete-budget tree over the edges of the complete graph,
/// pruning any branch whose kept edges already complete a forbidden copy,
/// so the work is bounded by the number of pattern-free prefixes rather
/// than all 2^C(n,2) subsets.
pub fn enumerate_near_extremal(
    n: usize,
    k: usize,
    forbidden: &Graph,
    f: i64,
    limits: &HarnessLimits,
) -> Result<Vec<Graph>> {
    if n > limits.enumeration_max_n {
        return Err(Error::Capacity(format!(
            "exhaustive enumeration capped at n = {} (got {n}); use sampling past that",
            limits.enumeration_max_n
        )));
    }
    let target = turan_edge_count(n, k)? as i64;
    if forbidden.edge_count() == 0 && forbidden.vertex_count() <= n {
        // an edgeless pattern embeds in everything, so nothing qualifies
        return Ok(Vec::new());
    }
    let total = n * (n - 1) / 2;
    let min_edges = target - f;
    if min_edges > total as i64 {
        return Ok(Vec::new());
    }
    let budget = total - min_edges.max(0) as usize;

    let edges = Graph::complete(n).edges();
    let mut current = Graph::empty(n);
    let mut out = Vec::new();
    descend(0, 0, budget, &edges, forbidden, &mut current, &mut out);
    out.sort_by_key(|g| Reverse(g.edge_count()));
    Ok(out)
}

fn descend(
    idx: usize,
    deleted: usize,
    budget: usize,
    edges: &[(usize, usize)],
    forbidden: &Graph,
    current: &mut Graph,
    out: &mut Vec<Graph>,
) {
    if idx == edges.len() {
        out.push(current.clone());
        return;
    }
    let (u, v) = edges[idx];
    // keep branch first, so dense graphs appear early
    current.add_edge(u, v);
    if !contains_subgraph_using_edge(current, forbidden, (u, v)) {
        descend(idx + 1, deleted, budget, edges, forbidden, current, out);
    }
    current.remove_edge(u, v);
    if deleted < budget {
        descend(idx + 1, deleted + 1, budget, edges, forbidden, current, out);
    }
}

/// Seeded random walks through the same band: each sample starts from the
/// balanced complete k-partite graph and performs local edge toggles,
/// refusing removals that would leave the band and additions that would
/// close a forbidden copy or overshoot the k-partite maximum. Results are
/// pattern-free band members but carry no coverage guarantee.
pub fn sample_near_extremal(
    n: usize,
    k: usize,
    forbidden: &Graph,
    f: i64,
    seed: u64,
    samples: usize,
    limits: &HarnessLimits,
) -> Result<Vec<Graph>> {
    if n > limits.sampling_max_n {
        return Err(Error::Capacity(format!(
            "sampled verification capped at n = {} (got {n})",
            limits.sampling_max_n
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "sampling needs at least two vertices".into(),
        ));
    }
    let start = crate::constructions::turan_graph(n, k)?.graph().clone();
    if contains_subgraph(&start, forbidden).is_some() {
        return Err(Error::Precondition(format!(
            "the balanced {k}-partite graph on {n} vertices already contains the forbidden pattern"
        )));
    }
    let target = start.edge_count();
    let min_edges = (target as i64 - f).max(0) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = 3 * n * n;
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut g = start.clone();
        for _ in 0..steps {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                continue;
            }
            if g.has_edge(u, v) {
                if g.edge_count() > min_edges {
                    g.remove_edge(u, v);
                }
            } else if g.edge_count() < target {
                g.add_edge(u, v);
                if contains_subgraph_using_edge(&g, forbidden, (u, v)) {
                    g.remove_edge(u, v);
                }
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// One representative per isomorphism class, keeping first occurrences in
/// input order. Buckets by cheap invariants (order, size, degree sequence,
/// per-vertex triangle counts) before paying for isomorphism tests.
pub fn dedup_isomorphs(graphs: &[Graph]) -> Vec<Graph> {
    type Key = (usize, usize, Vec<usize>, Vec<usize>);
    let mut buckets: HashMap<Key, Vec<usize>> = HashMap::new();
    let mut reps: Vec<Graph> = Vec::new();
    for g in graphs {
        let key = (
            g.vertex_count(),
            g.edge_count(),
            g.degree_sequence(),
            triangle_profile(g),
        );
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|&i| are_isomorphic(&reps[i], g)) {
            bucket.push(reps.len());
            reps.push(g.clone());
        }
    }
    reps
}

fn triangle_profile(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut counts = vec![0usize; n];
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors(v).iter().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    counts[v] += 1;
                }
            }
        }
    }
    counts.sort_unstable();
    counts
}

/// Maximum edge count over graphs on n labeled vertices avoiding the
/// pattern. Exhaustive, so it obeys the enumeration cap.
pub fn max_forbidden_free_edges(n: usize, forbidden: &Graph, limits: &HarnessLimits) -> Result<usize> {
    if n > limits.enumeration_max_n {
        return Err(Error::Capacity(format!(
            "edge-maximum search capped at n = {} (got {n})",
            limits.enumeration_max_n
        )));
    }
    if forbidden.edge_count() == 0 {
        return Err(Error::InvalidParameter(
            "edge-maximum search needs a pattern with at least one edge".into(),
        ));
    }
    Ok(max_pattern_free_edges(&Graph::complete(n), forbidden))
}
