//! Exact search primitives: coloring, subgraph embedding, homomorphism,
//! isomorphism. All single-threaded; callers parallelize across instances.

mod chromatic;
mod homomorphism;
mod iso;
mod subgraph;

pub use chromatic::{chromatic_number, is_k_colorable};
pub use homomorphism::hom_with_capacities;
pub use iso::are_isomorphic;
pub use subgraph::{contains_subgraph, contains_subgraph_using_edge, EmbeddingWitness};
