//! Problem-agnostic decomposition engine.
//!
//! A multi-objective problem is split into one scalar subproblem per weight
//! vector using the weighted Chebyshev function against a running ideal
//! point. Subproblems breed from their Euclidean neighborhood in weight
//! space and hand improving offspring to their neighbors. With adaptive
//! effort enabled, each subproblem's share of the per-generation offspring
//! budget tracks the variance of the scalar fitness it observed in the
//! previous generation.

mod effort;
mod engine;
mod hypervolume;
mod neighborhood;
mod pareto;
mod scalarize;
mod snapshot;
mod types;
mod zdt;

pub use effort::{allocate_effort, equal_effort, fitness_variance};
pub use engine::{
    run, Individual, Optimizer, Problem, RunConfig, RunResult, Subproblem, UNBOUNDED_REPLACEMENT,
};
pub use hypervolume::hypervolume_2d;
pub use neighborhood::build_neighborhoods;
pub use pareto::{non_dominated_indices, pareto_filter};
pub use scalarize::{chebyshev, update_ideal};
pub use snapshot::{Snapshot, SnapshotRecord};
pub use types::{IdealPoint, ObjectiveVector, WeightVector, WEIGHT_EPSILON};
pub use zdt::{Zdt1, Zdt1Error, MUTATION_SIGMA};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objective {position} is not finite ({value})")]
    NonFinite { position: usize, value: f64 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("snapshot line {line}: {message}")]
    Snapshot { line: usize, message: String },
    #[error(transparent)]
    Problem(Box<dyn std::error::Error + Send + Sync>),
}
