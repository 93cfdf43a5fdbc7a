//! Blown-up Mycielskian families: the single-layer M_k(a,b,c) shape and
//! its l-layer generalization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{turan_edge_count, Graph, VertexSet};

use super::{complete_between, ConstructionArtifact, ConstructionParams};

/// Core builder shared by the Mycielskian-shaped families: k V-classes with
/// the given sizes, `layers` rows of k W-classes of uniform size `w`, and an
/// apex class U of size `u`, laid out in that order as consecutive blocks.
///
/// Edges: complete between distinct V-classes; between V_j and first-layer
/// W_i for i != j; between W_i of layer m and W_j of layer m+1 for i != j;
/// and between every last-layer W_i and U. W labels carry a ^m layer
/// superscript when `superscripts` is set.
pub(crate) fn assemble(
    k: usize,
    layers: usize,
    v_sizes: &[usize],
    w: usize,
    u: usize,
    superscripts: bool,
) -> (Graph, BTreeMap<String, VertexSet>) {
    assert_eq!(v_sizes.len(), k);
    assert!(layers >= 1);
    let n: usize = v_sizes.iter().sum::<usize>() + k * layers * w + u;
    let mut graph = Graph::empty(n);
    let mut classes = BTreeMap::new();

    let mut offset = 0usize;
    let mut v_blocks: Vec<(usize, usize)> = Vec::with_capacity(k);
    for (i, &sz) in v_sizes.iter().enumerate() {
        classes.insert(format!("V{}", i + 1), VertexSet::from_iter(n, offset..offset + sz));
        v_blocks.push((offset, offset + sz));
        offset += sz;
    }
    let mut w_blocks: Vec<Vec<(usize, usize)>> = Vec::with_capacity(layers);
    for m in 1..=layers {
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let label = if superscripts {
                format!("W{}^{}", i + 1, m)
            } else {
                format!("W{}", i + 1)
            };
            classes.insert(label, VertexSet::from_iter(n, offset..offset + w));
            row.push((offset, offset + w));
            offset += w;
        }
        w_blocks.push(row);
    }
    classes.insert("U".to_string(), VertexSet::from_iter(n, offset..offset + u));
    let u_block = (offset, offset + u);

    for i in 0..k {
        for j in (i + 1)..k {
            complete_between(&mut graph, v_blocks[i].0..v_blocks[i].1, v_blocks[j].0..v_blocks[j].1);
        }
    }
    for i in 0..k {
        for j in 0..k {
            if i != j {
                complete_between(
                    &mut graph,
                    v_blocks[j].0..v_blocks[j].1,
                    w_blocks[0][i].0..w_blocks[0][i].1,
                );
            }
        }
    }
    for m in 0..layers - 1 {
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    complete_between(
                        &mut graph,
                        w_blocks[m][i].0..w_blocks[m][i].1,
                        w_blocks[m + 1][j].0..w_blocks[m + 1][j].1,
                    );
                }
            }
        }
    }
    for i in 0..k {
        complete_between(
            &mut graph,
            w_blocks[layers - 1][i].0..w_blocks[layers - 1][i].1,
            u_block.0..u_block.1,
        );
    }
    (graph, classes)
}

/// The blown-up Mycielskian M_k(a,b,c): k V-classes of size a, k W-classes
/// of size b, apex class U of size c; classes labeled V1..Vk, W1..Wk, U.
pub fn mk_blowup(k: usize, a: usize, b: usize, c: usize) -> Result<ConstructionArtifact> {
    if k < 2 {
        return Err(Error::InvalidParameter("mk_blowup: k must be >= 2".into()));
    }
    let v_sizes = vec![a; k];
    let (graph, classes) = assemble(k, 1, &v_sizes, b, c, false);
    let deficiency =
        turan_edge_count(graph.vertex_count(), k)? as i64 - graph.edge_count() as i64;
    let params = ConstructionParams::new(
        "mk_blowup",
        &[("k", k as i64), ("a", a as i64), ("b", b as i64), ("c", c as i64), ("deficiency", deficiency)],
    );
    ConstructionArtifact::new(graph, k, classes, params, deficiency)
}

/// The l-layer variant: W-classes form `l` rows chained layer to layer,
/// with only the first row attached to the V side and only the last to U.
/// Classes labeled V1..Vk, Wi^m, U.
pub fn mk_layered(k: usize, l: usize, a: usize, b: usize, c: usize) -> Result<ConstructionArtifact> {
    if k < 2 {
        return Err(Error::InvalidParameter("mk_layered: k must be >= 2".into()));
    }
    if l < 1 {
        return Err(Error::InvalidParameter("mk_layered: l must be >= 1".into()));
    }
    let v_sizes = vec![a; k];
    let (graph, classes) = assemble(k, l, &v_sizes, b, c, true);
    let deficiency =
        turan_edge_count(graph.vertex_count(), k)? as i64 - graph.edge_count() as i64;
    let params = ConstructionParams::new(
        "mk_layered",
        &[
            ("k", k as i64),
            ("l", l as i64),
            ("a", a as i64),
            ("b", b as i64),
            ("c", c as i64),
            ("deficiency", deficiency),
        ],
    );
    ConstructionArtifact::new(graph, k, classes, params, deficiency)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{blowup, mycielskian, turan_graph};
    use crate::search::{are_isomorphic, chromatic_number};

    fn binom2(x: usize) -> usize {
        x * (x.saturating_sub(1)) / 2
    }

    #[test]
    fn figure_sized_instances() {
        let m311 = mk_blowup(3, 1, 1, 1).unwrap();
        assert_eq!(m311.graph().vertex_count(), 7);
        assert_eq!(m311.graph().edge_count(), 12);
        assert!(are_isomorphic(m311.graph(), &mycielskian(&Graph::complete(3))));

        let m322 = mk_blowup(3, 1, 2, 2).unwrap();
        assert_eq!(m322.graph().vertex_count(), 11);
        assert_eq!(m322.graph().edge_count(), 27);

        let layered = mk_layered(3, 3, 1, 2, 3).unwrap();
        assert_eq!(layered.graph().vertex_count(), 24);
    }

    #[test]
    fn degenerate_w_and_u_leave_a_turan_graph() {
        let art = mk_blowup(3, 2, 0, 0).unwrap();
        assert!(are_isomorphic(art.graph(), turan_graph(6, 3).unwrap().graph()));
        assert_eq!(art.deficiency(), 0);
    }

    #[test]
    fn edge_count_formula_single_layer() {
        for k in 2..=4 {
            for a in 0..=3 {
                for b in 0..=3 {
                    for c in 0..=3 {
                        let art = mk_blowup(k, a, b, c).unwrap();
                        let expect = binom2(k) * a * a + k * (k - 1) * a * b + k * b * c;
                        assert_eq!(art.graph().edge_count(), expect, "k={k} a={a} b={b} c={c}");
                        assert_eq!(art.graph().vertex_count(), k * a + k * b + c);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_count_formula_layered() {
        for k in 2..=4 {
            for l in 1..=3 {
                for a in 0..=3 {
                    for b in 0..=3 {
                        for c in 0..=3 {
                            let art = mk_layered(k, l, a, b, c).unwrap();
                            let expect = binom2(k) * a * a
                                + k * (k - 1) * a * b
                                + (l - 1) * k * (k - 1) * b * b
                                + k * b * c;
                            assert_eq!(
                                art.graph().edge_count(),
                                expect,
                                "k={k} l={l} a={a} b={b} c={c}"
                            );
                            assert_eq!(art.graph().vertex_count(), k * a + k * l * b + c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_layer_collapses_to_single_layer_family() {
        for (k, a, b, c) in [(2, 1, 1, 2), (3, 2, 1, 1), (2, 2, 2, 1)] {
            let layered = mk_layered(k, 1, a, b, c).unwrap();
            let flat = mk_blowup(k, a, b, c).unwrap();
            assert!(are_isomorphic(layered.graph(), flat.graph()));
        }
    }

    #[test]
    fn matches_generic_blowup_of_mycielskian() {
        // Blow up M(K_3) directly (originals, shadows, apex) and compare.
        let base = mycielskian(&Graph::complete(3));
        let mults = [1, 1, 1, 2, 2, 2, 2];
        let generic = blowup(&base, &mults);
        let direct = mk_blowup(3, 1, 2, 2).unwrap();
        assert!(are_isomorphic(&generic, direct.graph()));
    }

    #[test]
    fn deleting_u_or_v_drops_the_chromatic_number() {
        let art = mk_layered(3, 2, 1, 2, 2).unwrap();
        let g = art.graph();
        assert_eq!(chromatic_number(g), 4);

        let u = art.class("U").unwrap();
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|v| !u.contains(*v)).collect();
        assert!(chromatic_number(&g.induced(&keep)) <= 3);

        let mut v_union = art.class("V1").unwrap().clone();
        v_union.union_with(art.class("V2").unwrap());
        v_union.union_with(art.class("V3").unwrap());
        let keep: Vec<usize> =
            (0..g.vertex_count()).filter(|v| !v_union.contains(*v)).collect();
        assert!(chromatic_number(&g.induced(&keep)) <= 2);
    }

    #[test]
    fn rejects_k_below_two() {
        assert!(mk_blowup(1, 1, 1, 1).is_err());
        assert!(mk_layered(1, 2, 1, 1, 1).is_err());
    }
}
