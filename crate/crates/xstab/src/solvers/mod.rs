//! Exact and heuristic partition optimization: minimum edge deletions to
//! reach k-partiteness, edit distance to the balanced complete k-partite
//! graph, and the largest-subgraph gap maximization — plus the naive
//! oracles that validate them.

mod deletions;
mod edit;
mod tkt;

pub use deletions::{min_deletions_heuristic, min_deletions_to_k_partite_exact, naive_min_deletions_oracle};
pub use edit::edit_distance_to_turan;
pub use tkt::{max_pattern_free_edges, max_tkt_free_subgraph};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{turan_part_sizes, Graph};

/// Capacity configuration for the exact solvers and oracles. Exceeding a
/// limit is a typed error, so callers can fall back to the heuristic and
/// label the result an upper bound.
#[derive(Debug, Clone)]
pub struct SolverLimits {
    /// Exact min-deletions / edit-distance vertex cap for k = 2.
    pub exact_n_k2: usize,
    /// Same cap for k >= 3 (branching is k-ary, so tighter).
    pub exact_n_k3plus: usize,
    /// Hard budget on k^n for the naive enumeration oracle.
    pub oracle_budget: u128,
    /// Cap on k*n (the host order) for the edge-gap maximization.
    pub tkt_max_kn: usize,
    /// Multi-start count for the seeded local-search heuristic.
    pub heuristic_starts: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            exact_n_k2: 32,
            exact_n_k3plus: 24,
            oracle_budget: 100_000_000,
            tkt_max_kn: 10,
            heuristic_starts: 20,
        }
    }
}

impl SolverLimits {
    pub fn exact_cap(&self, k: usize) -> usize {
        if k <= 2 {
            self.exact_n_k2
        } else {
            self.exact_n_k3plus
        }
    }
}

/// An assignment of every vertex to one of k classes (0-based indices;
/// classes may be empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPartition {
    pub k: usize,
    pub assignment: Vec<usize>,
}

impl KPartition {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 && !assignment.is_empty() {
            return Err(Error::InvalidParameter("partition needs k >= 1".into()));
        }
        if let Some(&bad) = assignment.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidParameter(format!(
                "class index {bad} out of range for k = {k}"
            )));
        }
        Ok(KPartition { k, assignment })
    }

    /// Edges of g with both endpoints in one class, in ascending (u, v) order.
    pub fn internal_edge_list(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .into_iter()
            .filter(|&(u, v)| self.assignment[u] == self.assignment[v])
            .collect()
    }

    pub fn internal_edges(&self, g: &Graph) -> usize {
        self.internal_edge_list(g).len()
    }

    /// Cross-class vertex pairs of g that are not edges, ascending.
    pub fn missing_cross_list(&self, g: &Graph) -> Vec<(usize, usize)> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self.assignment[u] != self.assignment[v] && !g.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn missing_cross(&self, g: &Graph) -> usize {
        self.missing_cross_list(g).len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Witness that deleting `deleted` from the graph leaves it k-partite
/// under `partition`.
#[derive(Debug, Clone, Serialize)]
pub struct DeletionCertificate {
    pub partition: KPartition,
    pub deleted: Vec<(usize, usize)>,
    pub count: usize,
}

impl DeletionCertificate {
    /// Builds (and machine-checks) the certificate induced by a partition:
    /// the deleted set is exactly its internal edges.
    pub fn from_partition(g: &Graph, partition: KPartition) -> Self {
        let deleted = partition.internal_edge_list(g);
        let cert = DeletionCertificate { count: deleted.len(), deleted, partition };
        assert!(cert.verify(g), "internal-edge certificate failed its own check");
        cert
    }

    /// Independent soundness check: removing `deleted` leaves no class-
    /// internal edge, and the list is exactly the partition's internal set.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.partition.assignment.len() != g.vertex_count() {
            return false;
        }
        if self.count != self.deleted.len() {
            return false;
        }
        let mut stripped = g.clone();
        for &(u, v) in &self.deleted {
            if !stripped.remove_edge(u, v) {
                return false; // not an edge (or listed twice)
            }
        }
        let a = &self.partition.assignment;
        stripped.edges().iter().all(|&(u, v)| a[u] != a[v])
            && self.deleted == self.partition.internal_edge_list(g)
    }
}

/// Witness for the edit distance: a partition with balanced part sizes,
/// the internal edges to delete, and the missing cross pairs to add.
#[derive(Debug, Clone, Serialize)]
pub struct EditCertificate {
    pub partition: KPartition,
    pub deleted: Vec<(usize, usize)>,
    pub added: Vec<(usize, usize)>,
    pub total: usize,
}

impl EditCertificate {
    pub fn from_partition(g: &Graph, partition: KPartition) -> Self {
        let deleted = partition.internal_edge_list(g);
        let added = partition.missing_cross_list(g);
        let cert = EditCertificate {
            total: deleted.len() + added.len(),
            deleted,
            added,
            partition,
        };
        assert!(cert.verify(g), "edit certificate failed its own check");
        cert
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.partition.assignment.len() != n {
            return false;
        }
        let mut sizes = self.partition.class_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        if sizes != turan_part_sizes(n, self.partition.k) {
            return false;
        }
        self.deleted == self.partition.internal_edge_list(g)
            && self.added == self.partition.missing_cross_list(g)
            && self.total == self.deleted.len() + self.added.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let g = Graph::cycle(5);
        let p = KPartition::new(2, vec![0, 1, 0, 1, 0]).unwrap();
        assert_eq!(p.internal_edges(&g), 1); // the wrap edge 4-0
        assert_eq!(p.internal_edge_list(&g), vec![(0, 4)]);
        // cross pairs: 2*3 = 6 total, 4 of them are edges
        assert_eq!(p.missing_cross(&g), 2);
        assert_eq!(p.class_sizes(), vec![3, 2]);
    }

    #[test]
    fn partition_rejects_out_of_range() {
        assert!(KPartition::new(2, vec![0, 2]).is_err());
        assert!(KPartition::new(0, vec![0]).is_err());
        assert!(KPartition::new(0, vec![]).is_ok()); // empty graph, any k
    }

    #[test]
    fn deletion_certificate_roundtrip() {
        let g = Graph::cycle(5);
        let p = KPartition::new(2, vec![0, 1, 0, 1, 0]).unwrap();
        let cert = DeletionCertificate::from_partition(&g, p);
        assert_eq!(cert.count, 1);
        assert!(cert.verify(&g));

        let mut tampered = cert.clone();
        tampered.deleted.clear();
        tampered.count = 0;
        assert!(!tampered.verify(&g));
    }

    #[test]
    fn edit_certificate_requires_balanced_sizes() {
        let g = Graph::complete(4);
        let balanced = KPartition::new(2, vec![0, 0, 1, 1]).unwrap();
        let cert = EditCertificate::from_partition(&g, balanced);
        assert_eq!(cert.total, 2); // two internal edges, nothing missing

        let skewed = KPartition::new(2, vec![0, 0, 0, 1]).unwrap();
        let bad = EditCertificate {
            deleted: skewed.internal_edge_list(&g),
            added: skewed.missing_cross_list(&g),
            total: 3,
            partition: skewed,
        };
        assert!(!bad.verify(&g));
    }
}
