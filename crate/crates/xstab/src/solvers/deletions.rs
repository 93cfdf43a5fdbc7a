//! Minimum number of edge deletions that make a graph k-partite.
//!
//! Three routes with one contract: the exact branch-and-bound (two-phase,
//! returning the lexicographically smallest optimal assignment), the naive
//! full-enumeration oracle (value only), and a seeded multi-start local
//! search whose result is always an upper bound.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solvers::{DeletionCertificate, KPartition, SolverLimits};

// Row-per-vertex adjacency masks; the exact paths cap n at 64 so one word
// is always enough.
fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut rows = vec![0u64; n];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

/// Phase 1: prove the optimal value. Vertices are visited in nonincreasing
/// degree order; the only lower bound is the forced internal-edge count,
/// pruned against the incumbent. Class symmetry is broken by restricted
/// growth (a vertex may open at most one new class).
fn value_search(
    pos: usize,
    used: usize,
    cost: usize,
    class_masks: &mut [u64],
    nbrs: &[u64],
    best: &mut usize,
) {
    if pos == nbrs.len() {
        *best = cost;
        return;
    }
    let row = nbrs[pos];
    let open = (used + 1).min(class_masks.len());
    for c in 0..open {
        let add = (class_masks[c] & row).count_ones() as usize;
        if cost + add < *best {
            class_masks[c] |= 1 << pos;
            value_search(pos + 1, used.max(c + 1), cost + add, class_masks, nbrs, best);
            class_masks[c] &= !(1 << pos);
        }
    }
}

/// Phase 2: first leaf of the restricted-growth DFS in vertex-id order
/// whose cost stays within the proven optimum. Every completion costs at
/// least `opt`, so the first one found is the lexicographically smallest
/// optimal assignment.
fn lex_search(
    v: usize,
    used: usize,
    cost: usize,
    opt: usize,
    class_masks: &mut [u64],
    nbrs: &[u64],
    assignment: &mut Vec<usize>,
) -> bool {
    if v == nbrs.len() {
        debug_assert_eq!(cost, opt);
        return true;
    }
    let row = nbrs[v];
    let open = (used + 1).min(class_masks.len());
    for c in 0..open {
        let add = (class_masks[c] & row).count_ones() as usize;
        if cost + add <= opt {
            class_masks[c] |= 1 << v;
            assignment.push(c);
            if lex_search(v + 1, used.max(c + 1), cost + add, opt, class_masks, nbrs, assignment) {
                return true;
            }
            assignment.pop();
            class_masks[c] &= !(1 << v);
        }
    }
    false
}

/// Exact minimum deletions to k-partiteness, with a machine-checked
/// certificate. Ties between optimal partitions break toward the
/// lexicographically smallest assignment vector.
pub fn min_deletions_to_k_partite_exact(
    g: &Graph,
    k: usize,
    limits: &SolverLimits,
) -> Result<DeletionCertificate> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = g.vertex_count();
    let cap = limits.exact_cap(k).min(64);
    if n > cap {
        return Err(Error::Capacity(format!(
            "exact solver capped at n = {cap} for k = {k} (got n = {n}); \
             the seeded heuristic has no size cap"
        )));
    }
    if n == 0 {
        return Ok(DeletionCertificate::from_partition(g, KPartition::new(k, vec![])?));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let rows = adjacency_masks(g);
    // Remap adjacency into search order so phase 1 masks index by position.
    let mut pos_of = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos_of[v] = p;
    }
    let mut ordered = vec![0u64; n];
    for (p, &v) in order.iter().enumerate() {
        let mut row = rows[v];
        while row != 0 {
            let w = row.trailing_zeros() as usize;
            row &= row - 1;
            ordered[p] |= 1 << pos_of[w];
        }
    }

    // Warm start bounds the value search; +1 turns the achieved value into
    // a strict exploration bound.
    let warm = min_deletions_heuristic(g, k, 0, limits);
    let mut best = warm.count + 1;
    let mut class_masks = vec![0u64; k];
    value_search(0, 0, 0, &mut class_masks, &ordered, &mut best);
    let opt = best.min(warm.count);

    class_masks.iter_mut().for_each(|m| *m = 0);
    let mut assignment = Vec::with_capacity(n);
    let found = lex_search(0, 0, 0, opt, &mut class_masks, &rows, &mut assignment);
    assert!(found, "no assignment reaches the proven optimum");
    Ok(DeletionCertificate::from_partition(g, KPartition::new(k, assignment)?))
}

/// Value-only oracle: enumerate all k^n assignments and return the minimum
/// internal-edge count. Errors when k^n exceeds the configured budget.
pub fn naive_min_deletions_oracle(g: &Graph, k: usize, limits: &SolverLimits) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    let states = (k as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Capacity(format!("k^n overflows for k = {k}, n = {n}")))?;
    if states > limits.oracle_budget {
        return Err(Error::Capacity(format!(
            "oracle budget is {} assignments, instance needs {states}",
            limits.oracle_budget
        )));
    }

    let rows = adjacency_masks(g);
    let mut class_masks = vec![0u64; k];
    let mut best = g.edge_count() + 1;
    // Full k-ary recursion over vertices 0..n; the last level folds the k
    // choices into a min instead of recursing.
    fn walk(v: usize, cost: usize, class_masks: &mut [u64], rows: &[u64], best: &mut usize) {
        let row = rows[v];
        if v + 1 == rows.len() {
            let tail = class_masks
                .iter()
                .map(|&m| (m & row).count_ones() as usize)
                .min()
                .unwrap();
            *best = (*best).min(cost + tail);
            return;
        }
        for c in 0..class_masks.len() {
            let add = (class_masks[c] & row).count_ones() as usize;
            class_masks[c] |= 1 << v;
            walk(v + 1, cost + add, class_masks, rows, best);
            class_masks[c] &= !(1 << v);
        }
    }
    walk(0, 0, &mut class_masks, &rows, &mut best);
    Ok(best)
}

/// Multi-start steepest-descent local search. Each start deals a seeded
/// shuffle round-robin into k classes (balanced), then repeatedly applies
/// the single-vertex move with the largest strict decrease in internal
/// edges (ties toward the smallest vertex, then class). Deterministic for
/// a fixed seed; the result is always a valid upper bound.
pub fn min_deletions_heuristic(
    g: &Graph,
    k: usize,
    seed: u64,
    limits: &SolverLimits,
) -> DeletionCertificate {
    assert!(k >= 1, "k must be at least 1");
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = limits.heuristic_starts.max(1);

    let mut champion: Option<(usize, Vec<usize>)> = None;
    for _ in 0..starts {
        let mut dealt: Vec<usize> = (0..n).collect();
        dealt.shuffle(&mut rng);
        let mut assignment = vec![0usize; n];
        for (i, &v) in dealt.iter().enumerate() {
            assignment[v] = i % k;
        }

        // to_class[v][c] = |N(v) in class c|, maintained across moves.
        let mut to_class = vec![vec![0usize; k]; n];
        for (u, v) in g.edges() {
            to_class[u][assignment[v]] += 1;
            to_class[v][assignment[u]] += 1;
        }

        loop {
            let mut step: Option<(usize, usize, usize)> = None; // (gain, v, c)
            for v in 0..n {
                let home = to_class[v][assignment[v]];
                for c in 0..k {
                    if c == assignment[v] || to_class[v][c] >= home {
                        continue;
                    }
                    let gain = home - to_class[v][c];
                    if step.map_or(true, |(g0, _, _)| gain > g0) {
                        step = Some((gain, v, c));
                    }
                }
            }
            let Some((_, v, c)) = step else { break };
            let old = assignment[v];
            for w in g.neighbors(v).iter() {
                to_class[w][old] -= 1;
                to_class[w][c] += 1;
            }
            assignment[v] = c;
        }

        let internal: usize = (0..n).map(|v| to_class[v][assignment[v]]).sum::<usize>() / 2;
        if champion.as_ref().map_or(true, |(best, _)| internal < *best) {
            champion = Some((internal, assignment));
        }
    }

    let assignment = champion.map(|(_, a)| a).unwrap_or_default();
    DeletionCertificate::from_partition(
        g,
        KPartition::new(k, assignment).expect("heuristic produced class index >= k"),
    )
}
