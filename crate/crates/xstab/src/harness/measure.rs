//! One measured data point per construction: build it, run its designated
//! containment or coloring check, compute the requested distance, and fold
//! everything (including any errors) into a flat serializable row.

use std::time::Instant;

use serde::Serialize;

use crate::constructions::{
    construction_counter1, construction_propcount1, construction_qary, imbalanced_turan,
    mk_blowup, mk_layered, turan_graph, ConstructionArtifact,
};
use crate::error::Error;
use crate::graph::Graph;
use crate::harness::HarnessLimits;
use crate::search::{contains_subgraph, is_k_colorable};
use crate::solvers::{
    edit_distance_to_turan, min_deletions_heuristic, min_deletions_to_k_partite_exact,
    naive_min_deletions_oracle,
};

/// Which distance solver a measurement should use. Exact falls back to the
/// heuristic above the exact capacity and says so in the row's status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    Exact,
    Heuristic,
    Oracle,
}

impl std::fmt::Display for DistanceMode {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            DistanceMode::Exact => "exact",
            DistanceMode::Heuristic => "heuristic",
            DistanceMode::Oracle => "oracle",
        };
        write!(out, "{label}")
    }
}

impl std::str::FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exact" => Ok(DistanceMode::Exact),
            "heuristic" => Ok(DistanceMode::Heuristic),
            "oracle" => Ok(DistanceMode::Oracle),
            other => Err(Error::InvalidParameter(format!(
                "unknown distance mode {other:?} (expected exact, heuristic, or oracle)"
            ))),
        }
    }
}

/// A fully specified buildable instance: family token plus its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    Turan { n: usize, k: usize },
    Imbalanced { n: usize, k: usize, m: usize },
    Counter1 { n: usize, k: usize, f: usize },
    Propcount1 { n: usize, k: usize, layers: usize, f: usize },
    Qary { n: usize, k: usize, f: usize },
    MkBlowup { k: usize, a: usize, b: usize, c: usize },
    MkLayered { k: usize, l: usize, a: usize, b: usize, c: usize },
}

impl FamilySpec {
    pub fn family(&self) -> &'static str {
        match self {
            FamilySpec::Turan { .. } => "turan",
            FamilySpec::Imbalanced { .. } => "imbalanced",
            FamilySpec::Counter1 { .. } => "counter1",
            FamilySpec::Propcount1 { .. } => "propcount1",
            FamilySpec::Qary { .. } => "qary",
            FamilySpec::MkBlowup { .. } => "mk-blowup",
            FamilySpec::MkLayered { .. } => "mk-layered",
        }
    }

    /// Vertex count the build will produce (used for ordering rows before
    /// anything is built).
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Turan { n, .. }
            | FamilySpec::Imbalanced { n, .. }
            | FamilySpec::Counter1 { n, .. }
            | FamilySpec::Propcount1 { n, .. }
            | FamilySpec::Qary { n, .. } => n,
            FamilySpec::MkBlowup { k, a, b, c } => k * (a + b) + c,
            FamilySpec::MkLayered { k, l, a, b, c } => k * a + l * k * b + c,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            FamilySpec::Turan { k, .. }
            | FamilySpec::Imbalanced { k, .. }
            | FamilySpec::Counter1 { k, .. }
            | FamilySpec::Propcount1 { k, .. }
            | FamilySpec::Qary { k, .. }
            | FamilySpec::MkBlowup { k, .. }
            | FamilySpec::MkLayered { k, .. } => k,
        }
    }

    /// The deficiency budget parameter, for families that take one.
    pub fn f_param(&self) -> Option<i64> {
        match *self {
            FamilySpec::Counter1 { f, .. }
            | FamilySpec::Propcount1 { f, .. }
            | FamilySpec::Qary { f, .. } => Some(f as i64),
            _ => None,
        }
    }

    pub fn build(&self) -> crate::error::Result<ConstructionArtifact> {
        match *self {
            FamilySpec::Turan { n, k } => turan_graph(n, k),
            FamilySpec::Imbalanced { n, k, m } => imbalanced_turan(n, k, m),
            FamilySpec::Counter1 { n, k, f } => construction_counter1(n, k, f),
            FamilySpec::Propcount1 { n, k, layers, f } => {
                construction_propcount1(n, k, layers, f)
            }
            FamilySpec::Qary { n, k, f } => construction_qary(n, k, f),
            FamilySpec::MkBlowup { k, a, b, c } => mk_blowup(k, a, b, c),
            FamilySpec::MkLayered { k, l, a, b, c } => mk_layered(k, l, a, b, c),
        }
    }
}

/// One measured instance, flat enough for a CSV line. `distance` is absent
/// when every solver in reach failed; `status` starts at "ok" and collects
/// semicolon-separated notes (never commas, to keep the CSV delimiter
/// unambiguous).
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub f: i64,
    pub edges: usize,
    pub deficiency: i64,
    pub distance: Option<usize>,
    pub distance_mode: String,
    pub edit_distance: Option<usize>,
    pub status: String,
    pub elapsed_ms: u128,
}

fn push_note(status: &mut String, note: &str) {
    if !status.is_empty() {
        status.push_str("; ");
    }
    status.push_str(&note.replace(',', ";"));
}

/// Checks the freeness property each family certifies: no complete graph
/// on k+1 vertices for counter1, no doubled-apex pattern for qary, and
/// k-colorability of every small vertex subset for the layered family
/// (exhaustive subsets, so only run at small n). Returns None when the
/// family has no designated check, Some(Ok(())) on success, Some(Err)
/// with a short description on failure.
fn designated_check(spec: &FamilySpec, g: &Graph) -> Option<std::result::Result<(), String>> {
    match *spec {
        FamilySpec::Counter1 { k, .. } => {
            let clique = Graph::complete(k + 1);
            Some(if contains_subgraph(g, &clique).is_some() {
                Err(format!("complete graph on {} vertices embeds", k + 1))
            } else {
                Ok(())
            })
        }
        FamilySpec::Qary { k, .. } => {
            let pattern = match mk_blowup(k, 1, 1, 2) {
                Ok(art) => art.graph().clone(),
                Err(e) => return Some(Err(format!("pattern build failed: {e}"))),
            };
            Some(if contains_subgraph(g, &pattern).is_some() {
                Err("doubled-apex pattern embeds".into())
            } else {
                Ok(())
            })
        }
        FamilySpec::Propcount1 { k, layers, .. } => {
            // exhaustive subset coloring is only affordable at tiny n
            if g.vertex_count() > 14 {
                return None;
            }
            Some(check_small_subsets_colorable(g, k, layers + 1))
        }
        _ => None,
    }
}

/// Every induced subgraph on `size` vertices must be k-colorable.
fn check_small_subsets_colorable(
    g: &Graph,
    k: usize,
    size: usize,
) -> std::result::Result<(), String> {
    let n = g.vertex_count();
    if size >= n {
        return if is_k_colorable(g, k) {
            Ok(())
        } else {
            Err(format!("the whole graph is not {k}-colorable"))
        };
    }
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        let induced = g.induced(&subset);
        if !is_k_colorable(&induced, k) {
            return Err(format!(
                "vertex subset {subset:?} induces a non-{k}-colorable subgraph"
            ));
        }
        // next combination in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if subset[i] != i + n - size {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..size {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Builds one instance and measures it. Never fails: construction errors,
/// failed designated checks, capacity fallbacks, and solver errors all
/// land in the row's status text.
pub fn measure_construction(
    spec: &FamilySpec,
    mode: DistanceMode,
    seed: u64,
    limits: &HarnessLimits,
) -> SweepRow {
    let started = Instant::now();
    let family = spec.family().to_string();
    let f_param = spec.f_param();

    let artifact = match spec.build() {
        Ok(a) => a,
        Err(e) => {
            let mut status = String::new();
            push_note(&mut status, &format!("construction-error: {e}"));
            return SweepRow {
                family,
                n: spec.order(),
                k: spec.k(),
                f: f_param.unwrap_or(0),
                edges: 0,
                deficiency: 0,
                distance: None,
                distance_mode: "none".into(),
                edit_distance: None,
                status,
                elapsed_ms: started.elapsed().as_millis(),
            };
        }
    };

    let g = artifact.graph();
    let k = artifact.k();
    let n = g.vertex_count();
    let deficiency = artifact.deficiency();
    let mut status = String::new();

    match designated_check(spec, g) {
        Some(Err(msg)) => push_note(&mut status, &format!("designated-check-failed: {msg}")),
        Some(Ok(())) | None => {}
    }

    let (distance, distance_mode) = match mode {
        DistanceMode::Exact => match min_deletions_to_k_partite_exact(g, k, &limits.solver) {
            Ok(cert) => (Some(cert.count), "exact"),
            Err(Error::Capacity(_)) => {
                push_note(&mut status, "exact-capacity-exceeded: heuristic upper bound");
                let cert = min_deletions_heuristic(g, k, seed, &limits.solver);
                (Some(cert.count), "heuristic")
            }
            Err(e) => {
                push_note(&mut status, &format!("solver-error: {e}"));
                (None, "none")
            }
        },
        DistanceMode::Heuristic => {
            let cert = min_deletions_heuristic(g, k, seed, &limits.solver);
            (Some(cert.count), "heuristic")
        }
        DistanceMode::Oracle => match naive_min_deletions_oracle(g, k, &limits.solver) {
            Ok(value) => (Some(value), "oracle"),
            Err(e) => {
                push_note(&mut status, &format!("oracle-error: {e}"));
                (None, "none")
            }
        },
    };

    let edit_distance = match edit_distance_to_turan(g, k, &limits.solver) {
        Ok(cert) => Some(cert.total),
        Err(Error::Capacity(_)) => None,
        Err(e) => {
            push_note(&mut status, &format!("edit-error: {e}"));
            None
        }
    };

    if status.is_empty() {
        status.push_str("ok");
    }
    SweepRow {
        family,
        n,
        k,
        f: f_param.unwrap_or(deficiency),
        edges: g.edge_count(),
        deficiency,
        distance,
        distance_mode: distance_mode.into(),
        edit_distance,
        status,
        elapsed_ms: started.elapsed().as_millis(),
    }
}
