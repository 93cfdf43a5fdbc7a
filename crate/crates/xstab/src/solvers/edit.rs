//! Exact edit distance to the balanced complete k-partite graph on the
//! same vertex set: choose a partition with balanced part sizes minimizing
//! (internal edges to delete) + (absent cross pairs to add).
//!
//! Equivalent formulation used by the search: maximize the number of
//! existing edges that go across classes; the distance is then
//! e(g) + cross_pairs - 2 * cross_edges.

use crate::error::{Error, Result};
use crate::graph::{turan_edge_count, turan_part_sizes, Graph};
use crate::solvers::{EditCertificate, KPartition, SolverLimits};

struct EditSearch {
    nbrs: Vec<u64>,
    caps: Vec<usize>,
    /// edges with at least one endpoint at position >= p (search order)
    edges_after: Vec<usize>,
}

impl EditSearch {
    /// Phase 1: best achievable cross-edge count. Classes with equal
    /// capacity are interchangeable, so an empty class may be entered only
    /// if it is the first empty class of its capacity.
    fn best_cross(
        &self,
        pos: usize,
        cross: usize,
        class_masks: &mut [u64],
        sizes: &mut [usize],
        best: &mut usize,
    ) {
        if pos == self.nbrs.len() {
            *best = (*best).max(cross);
            return;
        }
        if cross + self.edges_after[pos] <= *best {
            return;
        }
        let row = self.nbrs[pos];
        let placed_deg = (row & ((1u64 << pos) - 1)).count_ones() as usize;
        for c in 0..self.caps.len() {
            if sizes[c] == self.caps[c] {
                continue;
            }
            if sizes[c] == 0 {
                let first_empty_of_cap = (0..c).all(|d| self.caps[d] != self.caps[c] || sizes[d] > 0);
                if !first_empty_of_cap {
                    continue;
                }
            }
            let gained = placed_deg - (class_masks[c] & row).count_ones() as usize;
            class_masks[c] |= 1 << pos;
            sizes[c] += 1;
            self.best_cross(pos + 1, cross + gained, class_masks, sizes, best);
            sizes[c] -= 1;
            class_masks[c] &= !(1 << pos);
        }
    }

    /// Phase 2: first capacity-respecting assignment in vertex-id order
    /// reaching the proven cross-edge optimum; that leaf is the lex-min
    /// optimal assignment (same equal-capacity symmetry rule applies).
    fn lex_cross(
        &self,
        v: usize,
        cross: usize,
        target: usize,
        class_masks: &mut [u64],
        sizes: &mut [usize],
        assignment: &mut Vec<usize>,
    ) -> bool {
        if v == self.nbrs.len() {
            return cross == target;
        }
        if cross + self.edges_after[v] < target {
            return false;
        }
        let row = self.nbrs[v];
        let placed_deg = (row & ((1u64 << v) - 1)).count_ones() as usize;
        for c in 0..self.caps.len() {
            if sizes[c] == self.caps[c] {
                continue;
            }
            if sizes[c] == 0 {
                let first_empty_of_cap = (0..c).all(|d| self.caps[d] != self.caps[c] || sizes[d] > 0);
                if !first_empty_of_cap {
                    continue;
                }
            }
            let gained = placed_deg - (class_masks[c] & row).count_ones() as usize;
            class_masks[c] |= 1 << v;
            sizes[c] += 1;
            assignment.push(c);
            if self.lex_cross(v + 1, cross + gained, target, class_masks, sizes, assignment) {
                return true;
            }
            assignment.pop();
            sizes[c] -= 1;
            class_masks[c] &= !(1 << v);
        }
        false
    }
}

/// Exact edit distance to the balanced complete k-partite graph, with a
/// machine-checked add/delete certificate. Ties break toward the
/// lexicographically smallest assignment vector.
pub fn edit_distance_to_turan(g: &Graph, k: usize, limits: &SolverLimits) -> Result<EditCertificate> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = g.vertex_count();
    let cap = limits.exact_cap(k).min(64);
    if n > cap {
        return Err(Error::Capacity(format!(
            "edit-distance solver capped at n = {cap} for k = {k} (got n = {n})"
        )));
    }
    if n == 0 {
        return Ok(EditCertificate::from_partition(g, KPartition::new(k, vec![])?));
    }

    let caps = turan_part_sizes(n, k);
    let cross_pairs = turan_edge_count(n, k)?;

    // Search order: nonincreasing degree, ids break ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos_of = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos_of[v] = p;
    }

    let remap = |perm: &[usize]| -> Vec<u64> {
        let mut rows = vec![0u64; n];
        for (u, v) in g.edges() {
            let (pu, pv) = (perm[u], perm[v]);
            rows[pu] |= 1 << pv;
            rows[pv] |= 1 << pu;
        }
        rows
    };
    let edges_after_of = |rows: &[u64]| -> Vec<usize> {
        // after[p] = edges with an endpoint at position >= p. Counting each
        // edge at its higher endpoint makes the recurrence telescope.
        let mut after = vec![0usize; n + 1];
        for p in (0..n).rev() {
            let ends_here = (rows[p] & ((1u64 << p) - 1)).count_ones() as usize;
            after[p] = after[p + 1] + ends_here;
        }
        after
    };

    let ordered = remap(&pos_of);
    let search = EditSearch {
        edges_after: edges_after_of(&ordered),
        nbrs: ordered,
        caps: caps.clone(),
    };
    // Greedy incumbent: place each vertex (search order) into the open
    // class with the most placed neighbors.
    let mut best = {
        let mut masks = vec![0u64; k];
        let mut sizes = vec![0usize; k];
        let mut cross = 0usize;
        for p in 0..n {
            let row = search.nbrs[p];
            let placed = (row & ((1u64 << p) - 1)).count_ones() as usize;
            let c = (0..k)
                .filter(|&c| sizes[c] < caps[c])
                .min_by_key(|&c| (masks[c] & row).count_ones())
                .expect("capacities sum to n");
            cross += placed - (masks[c] & row).count_ones() as usize;
            masks[c] |= 1 << p;
            sizes[c] += 1;
        }
        cross
    };
    let mut masks = vec![0u64; k];
    let mut sizes = vec![0usize; k];
    search.best_cross(0, 0, &mut masks, &mut sizes, &mut best);
    let target = best;

    // Phase 2 runs in vertex-id order.
    let identity: Vec<usize> = (0..n).collect();
    let id_rows = remap(&identity);
    let lex = EditSearch {
        edges_after: edges_after_of(&id_rows),
        nbrs: id_rows,
        caps,
    };
    masks.iter_mut().for_each(|m| *m = 0);
    sizes.iter_mut().for_each(|s| *s = 0);
    let mut assignment = Vec::with_capacity(n);
    let found = lex.lex_cross(0, 0, target, &mut masks, &mut sizes, &mut assignment);
    assert!(found, "no balanced assignment reaches the proven cross maximum");

    let cert = EditCertificate::from_partition(g, KPartition::new(k, assignment)?);
    debug_assert_eq!(cert.total, g.edge_count() + cross_pairs - 2 * target);
    Ok(cert)
}
