//! Multi-objective evolutionary search by decomposition, with offspring
//! effort that follows each subproblem's fitness variance, and a multiple
//! sequence alignment problem domain built on it.
//!
//! - [`decomp`]: the engine (Chebyshev scalarization, neighborhoods, effort
//!   allocation, generation loop, Pareto filtering, ZDT1 benchmark).
//! - [`msa`]: alignments, the four alignment objectives, crossover and
//!   gap-shift mutation, seed generation.
//! - [`phylo`]: distance trees, bipartitions, false-negative rate, parsimony.
//! - [`io`]: FASTA, Newick, weight tables, substitution matrices, manifests.
//!
//! The guide in `book/` walks through each part; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod decomp;
pub mod io;
pub mod msa;
pub mod phylo;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/adaptive_effort.md")]
    mod adaptive_effort {}
    #[doc = include_str!("../../../book/src/alignment_objectives.md")]
    mod alignment_objectives {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/phylogeny.md")]
    mod phylogeny {}
    #[doc = include_str!("../../../book/src/file_formats.md")]
    mod file_formats {}
}
