//! Privacy-preserving single-source shortest distances by algebraic path
//! computation over the min-plus semiring.
//!
//! The crate is organised bottom-up:
//!
//! - [`weight`]: the tropical weight type (`min` as ⊕, saturating `+` as ⊗).
//! - [`abb`]: an arithmetic black box with a cleartext domain and a simulated
//!   three-party additive secret-sharing domain, metering every batched
//!   operation in a [`CostLedger`].
//! - [`sparse`]: coordinate-form matrices with public structure and private
//!   weights, plus the normalisation and reshaping kernels.
//! - [`separator`]: grid graphs and the public separator-tree plan that drives
//!   the recursive factorization.
//! - [`apc`]: the factorization recursion itself and its semiring kernels.
//! - [`baselines`]: Bellman-Ford with public edges over the same ABB, and the
//!   cleartext oracles used by the test suites.
//! - [`graph_io`]: the text formats shared by the CLI and fixtures.

pub mod abb;
pub mod apc;
pub mod baselines;
mod error;
pub mod graph_io;
pub mod separator;
pub mod sparse;
pub mod weight;

pub use abb::{
    estimate_time, Abb, AbbConfig, CostLedger, CostModel, Domain, EnvName, NetworkEnv, OpStats,
    SecretVector,
};
pub use apc::{
    algebraic_paths, block_diag_quasi_inverse, factorize, floyd_warshall_batch, min_sparse,
    sssd_apc, sum_sparse, ApcRun, FactorBlocks, LevelTrace,
};
pub use baselines::{bellman_ford_public, dijkstra_oracle, BfRun, EdgeListGraph};
pub use error::{Error, Result};
pub use separator::{build_separator_plan, grid_generate, GridGraph, SeparatorPlan};
pub use sparse::{DenseGrid, SparseMatrix};
pub use weight::{DistanceVector, Weight};
