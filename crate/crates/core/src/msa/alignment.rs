use std::collections::HashSet;
use std::fmt;

use super::MsaError;

/// Gap symbol used in every aligned row.
pub const GAP: u8 = b'-';

/// Residue symbols accepted anywhere: ASCII letters and the stop symbol `*`.
pub fn is_residue(symbol: u8) -> bool {
    symbol.is_ascii_alphabetic() || symbol == b'*'
}

/// An unaligned input sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSequence {
    id: String,
    residues: Vec<u8>,
}

impl RawSequence {
    pub fn new(id: impl Into<String>, residues: impl Into<Vec<u8>>) -> Result<Self, MsaError> {
        let id = id.into();
        let residues = residues.into();
        if id.is_empty() {
            return Err(MsaError::Contract("sequence id is empty".into()));
        }
        if residues.is_empty() {
            return Err(MsaError::Contract(format!("sequence `{id}` is empty")));
        }
        if let Some(&s) = residues.iter().find(|&&s| !is_residue(s)) {
            return Err(MsaError::Contract(format!(
                "sequence `{id}` contains non-residue symbol `{}`",
                s as char
            )));
        }
        Ok(Self { id, residues })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn residues(&self) -> &[u8] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// A rectangular alignment: one gapped row per named sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlignedMatrix {
    row_ids: Vec<String>,
    rows: Vec<Vec<u8>>,
}

impl AlignedMatrix {
    /// Checks shape only: at least one row, unique ids, equal row lengths,
    /// residue or gap symbols, and at least one residue per row.
    pub fn new(row_ids: Vec<String>, rows: Vec<Vec<u8>>) -> Result<Self, MsaError> {
        if rows.is_empty() || rows.len() != row_ids.len() {
            return Err(MsaError::Contract(format!(
                "{} ids for {} rows",
                row_ids.len(),
                rows.len()
            )));
        }
        let mut seen = HashSet::new();
        for id in &row_ids {
            if !seen.insert(id.as_str()) {
                return Err(MsaError::Contract(format!("duplicate row id `{id}`")));
            }
        }
        let width = rows[0].len();
        for (id, row) in row_ids.iter().zip(&rows) {
            if row.len() != width {
                return Err(MsaError::Contract(format!(
                    "row `{id}` has width {}, expected {width}",
                    row.len()
                )));
            }
            if let Some(&s) = row.iter().find(|&&s| s != GAP && !is_residue(s)) {
                return Err(MsaError::Contract(format!("row `{id}` has symbol `{}`", s as char)));
            }
            if !row.iter().any(|&s| is_residue(s)) {
                return Err(MsaError::Contract(format!("row `{id}` has no residues")));
            }
        }
        Ok(Self { row_ids, rows })
    }

    /// Convenience constructor from string rows, ids `s0`, `s1`, ...
    pub fn from_rows(rows: &[&str]) -> Result<Self, MsaError> {
        let ids = (0..rows.len()).map(|i| format!("s{i}")).collect();
        Self::new(ids, rows.iter().map(|r| r.as_bytes().to_vec()).collect())
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i]
    }

    /// Row `i` as text.
    pub fn row_str(&self, i: usize) -> &str {
        std::str::from_utf8(&self.rows[i]).expect("rows are ASCII")
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = u8> + '_ {
        self.rows.iter().map(move |r| r[c])
    }

    pub fn is_gap_column(&self, c: usize) -> bool {
        self.column(c).all(|s| s == GAP)
    }

    /// Row `i` with gaps removed.
    pub fn degapped(&self, i: usize) -> Vec<u8> {
        self.rows[i].iter().copied().filter(|&s| s != GAP).collect()
    }

    pub fn total_gaps(&self) -> usize {
        self.rows.iter().map(|r| r.iter().filter(|&&s| s == GAP).count()).sum()
    }

    /// `true` when no column is made only of gaps.
    pub fn is_normalized(&self) -> bool {
        (0..self.width()).all(|c| !self.is_gap_column(c))
    }

    /// Drops every all-gap column.
    pub fn without_gap_columns(&self) -> AlignedMatrix {
        let keep: Vec<usize> = (0..self.width()).filter(|&c| !self.is_gap_column(c)).collect();
        if keep.len() == self.width() {
            return self.clone();
        }
        let rows = self.rows.iter().map(|r| keep.iter().map(|&c| r[c]).collect()).collect();
        AlignedMatrix { row_ids: self.row_ids.clone(), rows }
    }

    /// Verifies that row `i` degaps to `seqs[i]`, ids included.
    pub fn check_conservation(&self, seqs: &[RawSequence]) -> Result<(), MsaError> {
        if seqs.len() != self.num_rows() {
            return Err(MsaError::Contract(format!(
                "alignment has {} rows, {} sequences expected",
                self.num_rows(),
                seqs.len()
            )));
        }
        for (i, seq) in seqs.iter().enumerate() {
            if self.row_ids[i] != seq.id() {
                return Err(MsaError::Contract(format!(
                    "row {i} is `{}`, expected `{}`",
                    self.row_ids[i],
                    seq.id()
                )));
            }
            if self.degapped(i) != seq.residues() {
                return Err(MsaError::Contract(format!(
                    "row `{}` does not degap to its input sequence",
                    seq.id()
                )));
            }
        }
        Ok(())
    }

    /// The degapped rows as raw sequences.
    pub fn raw_sequences(&self) -> Vec<RawSequence> {
        (0..self.num_rows())
            .map(|i| RawSequence { id: self.row_ids[i].clone(), residues: self.degapped(i) })
            .collect()
    }

    /// `true` when both alignments hold the same ids with the same residues.
    pub fn same_sequences(&self, other: &AlignedMatrix) -> bool {
        self.row_ids == other.row_ids
            && (0..self.num_rows()).all(|i| self.degapped(i) == other.degapped(i))
    }

    pub(crate) fn from_parts_unchecked(row_ids: Vec<String>, rows: Vec<Vec<u8>>) -> Self {
        Self { row_ids, rows }
    }
}

impl fmt::Display for AlignedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.num_rows() {
            writeln!(f, "{}\t{}", self.row_ids[i], self.row_str(i))?;
        }
        Ok(())
    }
}

/// Removes all-gap columns after checking residue conservation against `seqs`.
pub fn normalize_alignment(
    aln: &AlignedMatrix,
    seqs: &[RawSequence],
) -> Result<AlignedMatrix, MsaError> {
    aln.check_conservation(seqs)?;
    Ok(aln.without_gap_columns())
}
