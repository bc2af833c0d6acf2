//! Text formats: FASTA, Newick, weight tables, substitution matrices and
//! key=value manifests.

mod fasta;
mod manifest;
mod matrix;
mod newick;
mod weights;

pub use fasta::{parse_fasta, write_alignment, write_fasta, write_sequences, FastaRecords, FASTA_WIDTH};
pub use manifest::Manifest;
pub use matrix::{parse_matrix, write_matrix};
pub use newick::{parse_newick, write_newick};
pub use weights::{generate_weights, lattice_size, parse_weights, write_weights};

/// A format error. Every variant carries its location in the input.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("offset {offset}: {message}")]
    Offset { offset: usize, message: String },
    #[error("{0}")]
    Config(String),
}

pub(crate) fn at_line(line: usize, message: impl Into<String>) -> IoError {
    IoError::Line { line, message: message.into() }
}
