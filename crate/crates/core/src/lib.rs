//! Power graphs of finite groups and the power index of a graph.
//!
//! The power graph of a group `G` joins two distinct elements when one is a
//! power of the other. The power index `Θ(Γ)` of a graph `Γ` is the least
//! order of a group whose power graph contains `Γ` as a (not necessarily
//! induced) subgraph. This crate builds groups from a small family grammar,
//! computes their power graphs, evaluates the closed-form criteria for
//! complete graphs, complete bipartite graphs and 1-factors, and checks every
//! one of them against exhaustive oracles (embedding search, maximum clique,
//! maximum matching).
//!
//! Module map:
//!
//! * [`group`]: groups as dense Cayley tables, the family grammar, the
//!   per-order catalog.
//! * [`number_theory`]: factorization, totient, `χ_n`, `ρ_n`.
//! * [`graph`] and [`power_graph`]: simple graphs with bitset rows, text
//!   formats, the power graph itself.
//! * [`clique`]: exact maximum clique.
//! * [`matching`]: maximum matching, inverse-closed paths and path covers.
//! * [`embedding`]: the embedding oracle and everything built on top of it.
//! * [`verify`]: sweeps that bind the above into pass/fail reports.
//!
//! With the default `parallel` feature, batch work (catalog sweeps, Θ search
//! across the groups of one order) runs on rayon; without it the same code
//! runs sequentially. Results are identical either way.

pub mod clique;
pub mod embedding;
pub mod graph;
pub mod group;
pub mod matching;
pub mod number_theory;
pub mod par;
pub mod power_graph;
pub mod verify;

pub use clique::{clique_number, CliqueResult};
pub use embedding::{EmbeddingWitness, ThetaResult};
pub use graph::{GraphError, GraphFormat, SimpleGraph};
pub use group::{catalog_for_order, construct_group, Catalog, Group, GroupError, GroupSpec};
pub use matching::{InversePath, Matching, PathCover};
pub use power_graph::{power_graph, PowerGraph};
