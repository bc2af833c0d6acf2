//! Tree estimation from alignments and tree comparison.

mod distance;
mod nj;
mod parsimony;
mod splits;
mod tree;

pub use distance::{pairwise_distance, DistanceMatrix};
pub use nj::neighbor_joining;
pub use parsimony::{parsimony_score, parsimony_score_rooted};
pub use splits::{bipartitions, fn_rate, Bipartition, BipartitionSet};
pub use tree::{PhyloTree, TreeBuilder};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PhyloError {
    #[error("a tree needs at least 3 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid distance matrix: {0}")]
    InvalidDistance(String),
    #[error("leaf sets differ: only in first [{}], only in second [{}]", only_in_first.join(", "), only_in_second.join(", "))]
    LeafMismatch { only_in_first: Vec<String>, only_in_second: Vec<String> },
}

/// Labels present in exactly one of two sorted label lists.
pub(crate) fn leaf_mismatch(a: &[String], b: &[String]) -> Option<PhyloError> {
    if a == b {
        return None;
    }
    let only_in_first = a.iter().filter(|l| b.binary_search(l).is_err()).cloned().collect();
    let only_in_second = b.iter().filter(|l| a.binary_search(l).is_err()).cloned().collect();
    Some(PhyloError::LeafMismatch { only_in_first, only_in_second })
}
