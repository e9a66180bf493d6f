//! Unnoticeable community deception.
//!
//! Given a graph and a community detection algorithm, search for sets of
//! degree-preserving edge rewirings that trade off how badly the detector is
//! misled (DARI, the decrease of the adjusted Rand index against the clean
//! detection) against how much of the perturbation budget is left (DAT).
//! The search is an NSGA-II loop over individuals that are replayable lists
//! of rewiring moves.
//!
//! Module map:
//! - [`graph`]: simple undirected graphs, partitions and edge-list I/O.
//! - [`detection`]: Louvain, fast Newman and label propagation.
//! - [`metrics`]: modularity, ARI, DARI, DAT, hypervolume.
//! - [`synthgen`]: chain-of-cliques generator and the merge/split study.
//! - [`perturbation`]: rewiring moves, crossover and (biased) mutation.
//! - [`moo`]: the multi-objective search and its Pareto archive.
//! - [`baselines`]: the GAQ single-objective genetic baseline.
//! - [`experiment`]: run configuration, manifests and the CLI commands.
//! - [`datasets`]: bundled example graphs.

pub mod baselines;
pub mod datasets;
pub mod detection;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod moo;
pub mod perturbation;
pub mod rng;
pub mod synthgen;

pub use error::{Error, Result};
