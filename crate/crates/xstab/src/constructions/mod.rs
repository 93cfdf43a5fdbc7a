//! Named graph families with labeled vertex classes.
//!
//! Every family builder returns a [`ConstructionArtifact`]: the graph, a map
//! from class label ("V1", "W2^3", "U", ...) to vertex set, the generating
//! parameters, and a certified deficiency bound. Class labels survive into
//! the harness so per-pair edge completeness can be checked without
//! re-deriving the partition.

mod families;
mod layered;

pub use families::{construction_counter1, construction_propcount1, construction_qary};
pub use layered::{mk_blowup, mk_layered};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{turan_edge_count, turan_part_sizes, Graph, VertexSet};

/// Generating parameters of an artifact: family token plus named integer
/// values, with an optional free-text note for documented ambiguities.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionParams {
    pub family: String,
    pub values: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConstructionParams {
    pub fn new(family: &str, values: &[(&str, i64)]) -> Self {
        ConstructionParams {
            family: family.to_string(),
            values: values.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.values.get(key).copied()
    }
}

/// A built graph together with its labeled vertex classes and a deficiency
/// bound certified at construction time.
#[derive(Debug, Clone)]
pub struct ConstructionArtifact {
    graph: Graph,
    k: usize,
    classes: BTreeMap<String, VertexSet>,
    params: ConstructionParams,
    claimed_deficiency: i64,
}

impl ConstructionArtifact {
    /// Packages a built graph, checking the two structural invariants:
    /// the classes partition the vertex range, and
    /// `claimed_deficiency >= t_k(n) - e(G)`.
    pub fn new(
        graph: Graph,
        k: usize,
        classes: BTreeMap<String, VertexSet>,
        params: ConstructionParams,
        claimed_deficiency: i64,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        let mut union = VertexSet::new(n);
        let mut total = 0usize;
        for set in classes.values() {
            total += set.len();
            union.union_with(set);
        }
        if total != n || union.len() != n {
            return Err(Error::InvalidParameter(format!(
                "class sets do not partition the {n} vertices (cover {}, multiplicity sum {total})",
                union.len()
            )));
        }
        let actual = turan_edge_count(n, k)? as i64 - graph.edge_count() as i64;
        if claimed_deficiency < actual {
            return Err(Error::Construction {
                msg: format!(
                    "claimed deficiency {claimed_deficiency} below the exact value for {}",
                    params.family
                ),
                achieved: Some(actual),
            });
        }
        Ok(ConstructionArtifact { graph, k, classes, params, claimed_deficiency })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn classes(&self) -> &BTreeMap<String, VertexSet> {
        &self.classes
    }

    pub fn class(&self, label: &str) -> Option<&VertexSet> {
        self.classes.get(label)
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    /// The certified upper bound d with e(G) >= t_k(n) - d.
    pub fn claimed_deficiency(&self) -> i64 {
        self.claimed_deficiency
    }

    /// Exact deficiency t_k(n) - e(G).
    pub fn deficiency(&self) -> i64 {
        let n = self.graph.vertex_count();
        turan_edge_count(n, self.k).expect("k >= 1 by construction") as i64
            - self.graph.edge_count() as i64
    }
}

/// Complete k-partite graph on `n` vertices with part sizes as equal as
/// possible, classes labeled V1..Vk (consecutive vertex blocks, larger
/// parts first).
pub fn turan_graph(n: usize, k: usize) -> Result<ConstructionArtifact> {
    if k == 0 {
        return Err(Error::InvalidParameter("turan_graph: k must be >= 1".into()));
    }
    let sizes = turan_part_sizes(n, k);
    let (graph, classes) = complete_multipartite(&sizes);
    let params = ConstructionParams::new("turan", &[("n", n as i64), ("k", k as i64)]);
    ConstructionArtifact::new(graph, k, classes, params, 0)
}

/// Complete k-partite graph with one largest part enlarged by `m` and one
/// smallest part shrunk by `m` relative to the balanced split.
pub fn imbalanced_turan(n: usize, k: usize, m: usize) -> Result<ConstructionArtifact> {
    if k < 2 {
        return Err(Error::InvalidParameter("imbalanced_turan: k must be >= 2".into()));
    }
    let mut sizes = turan_part_sizes(n, k);
    if m > sizes[k - 1] {
        return Err(Error::InvalidParameter(format!(
            "imbalanced_turan: m = {m} exceeds the smallest part size {}",
            sizes[k - 1]
        )));
    }
    sizes[0] += m;
    sizes[k - 1] -= m;
    let (graph, classes) = complete_multipartite(&sizes);
    let deficiency = turan_edge_count(n, k)? as i64 - graph.edge_count() as i64;
    let params = ConstructionParams::new(
        "imbalanced",
        &[("n", n as i64), ("k", k as i64), ("m", m as i64), ("deficiency", deficiency)],
    );
    ConstructionArtifact::new(graph, k, classes, params, deficiency)
}

/// The chromatic-number-raising extension of `g`: vertex set V ∪ V' ∪ {u}
/// on 2n+1 vertices, edges E ∪ {vw' : vw ∈ E} ∪ K[V', {u}]. Originals keep
/// their ids, shadow of v is n+v, the apex is 2n.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut out = Graph::empty(2 * n + 1);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
        out.add_edge(u, n + v);
        out.add_edge(v, n + u);
    }
    for v in 0..n {
        out.add_edge(n + v, 2 * n);
    }
    out
}

/// Replaces each vertex v of `base` by an independent set of `mult[v]`
/// copies (0 deletes the vertex); copies are adjacent iff the originals are.
pub fn blowup(base: &Graph, mult: &[usize]) -> Graph {
    assert_eq!(mult.len(), base.vertex_count(), "one multiplicity per vertex");
    let mut offset = Vec::with_capacity(mult.len() + 1);
    let mut total = 0usize;
    for &m in mult {
        offset.push(total);
        total += m;
    }
    offset.push(total);
    let mut out = Graph::empty(total);
    for (u, v) in base.edges() {
        for cu in offset[u]..offset[u + 1] {
            for cv in offset[v]..offset[v + 1] {
                out.add_edge(cu, cv);
            }
        }
    }
    out
}

/// Builds the complete multipartite graph with the given part sizes as
/// consecutive vertex blocks labeled V1, V2, ...
pub(crate) fn complete_multipartite(sizes: &[usize]) -> (Graph, BTreeMap<String, VertexSet>) {
    let n: usize = sizes.iter().sum();
    let mut graph = Graph::empty(n);
    let mut classes = BTreeMap::new();
    let mut blocks: Vec<(usize, usize)> = Vec::with_capacity(sizes.len());
    let mut offset = 0usize;
    for (i, &sz) in sizes.iter().enumerate() {
        classes.insert(format!("V{}", i + 1), VertexSet::from_iter(n, offset..offset + sz));
        blocks.push((offset, offset + sz));
        offset += sz;
    }
    for i in 0..blocks.len() {
        for j in (i + 1)..blocks.len() {
            complete_between(&mut graph, blocks[i].0..blocks[i].1, blocks[j].0..blocks[j].1);
        }
    }
    (graph, classes)
}

/// Adds every edge between the two vertex ranges.
pub(crate) fn complete_between<A, B>(g: &mut Graph, a: A, b: B)
where
    A: IntoIterator<Item = usize>,
    B: IntoIterator<Item = usize> + Clone,
{
    for u in a {
        for v in b.clone() {
            g.add_edge(u, v);
        }
    }
}

/// Splits `total` into `k` parts, floor(total/k) each with the remainder
/// distributed one per part from the front. Used by every family that
/// rounds a fractional class size.
pub(crate) fn spread_parts(total: usize, k: usize) -> Vec<usize> {
    let base = total / k;
    let rem = total % k;
    (0..k).map(|i| base + usize::from(i < rem)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{are_isomorphic, chromatic_number, contains_subgraph};

    /// Exact clique number via repeated complete-subgraph search; an
    /// independent oracle for the blow-up and Mycielskian properties.
    fn clique_number(g: &Graph) -> usize {
        let mut best = 0;
        for t in 1..=g.vertex_count() {
            if contains_subgraph(g, &Graph::complete(t)).is_some() {
                best = t;
            } else {
                break;
            }
        }
        best
    }

    fn seeded_graph(state: &mut u64, n: usize, density_mod: u64) -> Graph {
        let mut next = || {
            *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *state >> 33
        };
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if next() % density_mod == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn turan_graph_small_cases() {
        let t42 = turan_graph(4, 2).unwrap();
        assert_eq!(t42.graph().edge_count(), 4);
        assert!(are_isomorphic(t42.graph(), &Graph::cycle(4)));
        assert_eq!(turan_graph(7, 3).unwrap().graph().edge_count(), 16);
        let t55 = turan_graph(5, 5).unwrap();
        assert!(are_isomorphic(t55.graph(), &Graph::complete(5)));
        assert_eq!(t55.deficiency(), 0);
    }

    #[test]
    fn turan_graph_classes_partition_and_are_independent() {
        let art = turan_graph(10, 3).unwrap();
        assert_eq!(art.classes().len(), 3);
        for set in art.classes().values() {
            let verts = set.to_vec();
            for (idx, &u) in verts.iter().enumerate() {
                for &v in &verts[idx + 1..] {
                    assert!(!art.graph().has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn mycielskian_of_edge_is_pentagon() {
        let m = mycielskian(&Graph::complete(2));
        assert!(are_isomorphic(&m, &Graph::cycle(5)));
    }

    #[test]
    fn mycielskian_of_single_vertex() {
        let m = mycielskian(&Graph::complete(1));
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edge_count(), 1);
        assert_eq!(m.degree(0), 0); // original is isolated when E is empty
    }

    #[test]
    fn mycielskian_raises_chi_and_preserves_clique() {
        let mut state = 0x1234_5678u64;
        for trial in 0..20 {
            let n = 3 + (trial % 5);
            let g = seeded_graph(&mut state, n, 2);
            let m = mycielskian(&g);
            assert_eq!(chromatic_number(&m), chromatic_number(&g) + 1);
            if g.edge_count() > 0 {
                assert_eq!(clique_number(&m), clique_number(&g));
            }
        }
    }

    #[test]
    fn blowup_basic_identities() {
        let k23 = blowup(&Graph::complete(2), &[2, 3]);
        let mut expect = Graph::empty(5);
        complete_between(&mut expect, 0..2, 2..5);
        assert!(are_isomorphic(&k23, &expect));

        let g = Graph::cycle(6);
        assert!(are_isomorphic(&blowup(&g, &[1; 6]), &g));

        // A zero multiplicity deletes the vertex.
        let path = blowup(&Graph::cycle(3), &[1, 0, 1]);
        assert_eq!(path.vertex_count(), 2);
        assert_eq!(path.edge_count(), 1);
    }

    #[test]
    fn imbalanced_turan_examples() {
        let zero = imbalanced_turan(8, 2, 0).unwrap();
        assert_eq!(zero.deficiency(), 0);
        assert!(are_isomorphic(zero.graph(), turan_graph(8, 2).unwrap().graph()));

        let k35 = imbalanced_turan(8, 2, 1).unwrap();
        assert_eq!(k35.graph().edge_count(), 15);
        assert_eq!(k35.deficiency(), 1);
        assert_eq!(k35.class("V1").unwrap().len(), 5);
        assert_eq!(k35.class("V2").unwrap().len(), 3);

        let t = imbalanced_turan(12, 3, 2).unwrap();
        assert_eq!(t.deficiency(), 4);
        assert_eq!(t.graph().edge_count(), 44);

        assert!(matches!(imbalanced_turan(8, 2, 5), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn artifact_rejects_bad_partition_and_bad_claim() {
        let g = Graph::cycle(4);
        let mut classes = BTreeMap::new();
        classes.insert("V1".to_string(), VertexSet::from_iter(4, [0usize, 1]));
        // vertex 3 uncovered
        classes.insert("V2".to_string(), VertexSet::from_iter(4, [2usize]));
        let params = ConstructionParams::new("turan", &[]);
        assert!(matches!(
            ConstructionArtifact::new(g.clone(), 2, classes, params.clone(), 0),
            Err(Error::InvalidParameter(_))
        ));

        // C_4 = T_2(4), deficiency 0; claiming -1 must fail with achieved 0.
        let mut classes = BTreeMap::new();
        classes.insert("V1".to_string(), VertexSet::from_iter(4, [0usize, 2]));
        classes.insert("V2".to_string(), VertexSet::from_iter(4, [1usize, 3]));
        match ConstructionArtifact::new(g, 2, classes, params, -1) {
            Err(Error::Construction { achieved: Some(0), .. }) => {}
            other => panic!("expected budget failure, got {other:?}"),
        }
    }

    #[test]
    fn spread_parts_distributes_remainder_from_front() {
        assert_eq!(spread_parts(17, 2), vec![9, 8]);
        assert_eq!(spread_parts(9, 3), vec![3, 3, 3]);
        assert_eq!(spread_parts(7, 3), vec![3, 2, 2]);
        assert_eq!(spread_parts(2, 3), vec![1, 1, 0]);
    }
}
