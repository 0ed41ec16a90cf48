//! Correlated inhomogeneous random graphs and k-core graph matching.
//!
//! The crate covers four layers:
//!
//! - [`graph`]: simple undirected graphs, k-cores and core numbers, edge-list I/O.
//! - [`models`]: edge-probability models (IRG, SBM, Chung-Lu, geometric, ER)
//!   and the correlated-pair sampler.
//! - [`matching`]: partial matchings, intersection graphs, the brute-force
//!   k-core estimator and the error-analysis objects.
//! - [`theory`]: closed-form bounds and recovery-condition checks.
//!
//! [`harness`] ties them together into seeded Monte Carlo experiments.

pub mod error;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod models;
pub mod rng;
pub mod stats;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{core_numbers, k_core, Graph, LabeledGraph, VertexSet};
pub use matching::{ErrorDecomposition, Matching};
pub use models::{
    build_probabilities, sample_correlated_pair, CorrelatedPair, EdgeProbabilities, ModelSpec,
    Permutation, PermutationMode,
};
pub use rng::{RngStream, SubStream};
pub use theory::{ConditionReport, Verdict};
