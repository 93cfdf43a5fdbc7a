//! Exact desk-scale toolkit for Turán-type stability questions: how far a
//! dense graph avoiding a forbidden subgraph H can be from k-partite, and
//! from the Turán graph itself.
//!
//! The crate builds the named near-extremal families (Mycielskian blow-ups,
//! their layered variants, the q-ary rewiring), solves the distance
//! problems exactly at small n (with oracle cross-checks and a seeded
//! heuristic beyond exact capacity), classifies forbidden graphs by which
//! stability bound applies to them, and drives verification experiments
//! and parameter sweeps from the `xstab` CLI.
//!
//! Conventions: vertices are dense ids 0..n-1, partition classes are
//! 0-based, and graphs travel as graph6 text. All solver outputs are
//! deterministic for a given seed and worker count.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod classify;
pub mod graph6;
pub mod harness;
pub mod search;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
