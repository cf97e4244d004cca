//! Containers for rooted 3-uniform hypergraphs.
//!
//! A 3-uniform hypergraph is *rooted* when each edge carries a designated
//! head vertex and every vertex pair lies in at most one edge headed
//! outside the pair. This crate implements the deterministic two-phase
//! container algorithm for such hypergraphs, fingerprint-based container
//! reconstruction, and the iterated container-family construction, applied
//! to the union hypergraph on the subset lattice (whose independent sets
//! are exactly the union-free families). A verification lab covers the
//! supporting machinery — Kneser spectra, the Expander Mixing Lemma, the
//! degree-bounded embedding, and the permutation counting identity — with
//! brute-force oracles at desk scale.

pub mod bounded;
pub mod bounds;
pub mod engine;
pub mod error;
pub mod exact;
pub mod family;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod params;
pub mod set;
pub mod supersat;
pub mod unionfree;

pub use engine::{
    is_core, is_eligible, reconstruct, reconstruct_run, run_container, ContainerRun,
    EligibilityMode, EligibilityWitness, RunOptions,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::{Edge, RootedHypergraph, RootednessViolation};
pub use params::{Params, Profile};
pub use set::VertexSet;
