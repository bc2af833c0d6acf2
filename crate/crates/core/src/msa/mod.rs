//! Multiple sequence alignment as an optimization domain.

mod alignment;
mod matrix;
mod objectives;
mod operators;
mod problem;
mod seed;

pub use alignment::{is_residue, normalize_alignment, AlignedMatrix, RawSequence, GAP};
pub use matrix::{SubstitutionMatrix, BLOSUM62_TEXT, UNKNOWN};
pub use objectives::{
    evaluate, gap_objective, maximization_scores, parsimony_objective, simg, simng, sop, Objective,
};
pub use operators::{gap_runs, shift_closed_gaps, single_point_crossover, splice};
pub use problem::MsaProblem;
pub use seed::{center_star, global_align, seed_population, SEED_GAP_PENALTY};

#[derive(Debug, thiserror::Error)]
pub enum MsaError {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("residue `{0}` is not in the substitution matrix")]
    UnknownResidue(char),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Phylo(#[from] crate::phylo::PhyloError),
}
