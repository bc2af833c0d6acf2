//! Recombination and mutation on alignments. Both keep every row's
//! residues in order, so the degapped rows never change.

use rand::{Rng, RngCore};

use super::{AlignedMatrix, MsaError, GAP};

/// Splices the left block of `a` onto the matching right remainder of `b`.
///
/// A cut column `c` is drawn uniformly from `1..width(a)`. For each row, the
/// residues of `a[..c]` are counted and `b`'s row is cut right after the
/// same number of residues. The right pieces are left-padded with gaps to a
/// common length, joined to the left block, and all-gap columns are dropped.
/// Alignments narrower than two columns come back unchanged.
pub fn single_point_crossover(
    a: &AlignedMatrix,
    b: &AlignedMatrix,
    rng: &mut dyn RngCore,
) -> Result<AlignedMatrix, MsaError> {
    if !a.same_sequences(b) {
        return Err(MsaError::Contract("crossover parents align different sequences".into()));
    }
    if a.width() < 2 {
        return Ok(a.clone());
    }
    let cut = rng.gen_range(1..a.width());
    Ok(splice(a, b, cut))
}

/// The crossover with an explicit cut column.
pub fn splice(a: &AlignedMatrix, b: &AlignedMatrix, cut: usize) -> AlignedMatrix {
    let rights: Vec<&[u8]> = (0..a.num_rows())
        .map(|r| {
            let consumed = a.row(r)[..cut].iter().filter(|&&s| s != GAP).count();
            let row = b.row(r);
            let at = if consumed == 0 {
                0
            } else {
                row.iter()
                    .enumerate()
                    .filter(|(_, &s)| s != GAP)
                    .nth(consumed - 1)
                    .map_or(row.len(), |(i, _)| i + 1)
            };
            &row[at..]
        })
        .collect();
    let right_width = rights.iter().map(|r| r.len()).max().unwrap_or(0);
    let rows = (0..a.num_rows())
        .map(|r| {
            let mut row = Vec::with_capacity(cut + right_width);
            row.extend_from_slice(&a.row(r)[..cut]);
            row.resize(cut + right_width - rights[r].len(), GAP);
            row.extend_from_slice(rights[r]);
            row
        })
        .collect();
    AlignedMatrix::from_parts_unchecked(a.row_ids().to_vec(), rows).without_gap_columns()
}

/// Maximal gap runs of a row as `(start, len)`.
pub fn gap_runs(row: &[u8]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < row.len() {
        if row[i] == GAP {
            let start = i;
            while i < row.len() && row[i] == GAP {
                i += 1;
            }
            runs.push((start, i - start));
        } else {
            i += 1;
        }
    }
    runs
}

/// Moves one closed gap within one row.
///
/// A row is drawn uniformly. If it has gaps, one maximal gap run is drawn
/// uniformly, cut out, and reinserted at a residue boundary (row start, or
/// directly after any residue) drawn uniformly among the boundaries that
/// actually change the row. Other rows are untouched; all-gap columns are
/// dropped afterwards.
pub fn shift_closed_gaps(aln: &AlignedMatrix, rng: &mut dyn RngCore) -> AlignedMatrix {
    let r = rng.gen_range(0..aln.num_rows());
    let row = aln.row(r);
    let runs = gap_runs(row);
    if runs.is_empty() {
        return aln.clone();
    }
    let (start, len) = runs[rng.gen_range(0..runs.len())];
    let Some(shifted) = shifted_row(row, start, len, rng) else {
        return aln.clone();
    };
    let mut rows = aln.rows().to_vec();
    rows[r] = shifted;
    AlignedMatrix::from_parts_unchecked(aln.row_ids().to_vec(), rows).without_gap_columns()
}

fn shifted_row(row: &[u8], start: usize, len: usize, rng: &mut dyn RngCore) -> Option<Vec<u8>> {
    let mut rest = Vec::with_capacity(row.len() - len);
    rest.extend_from_slice(&row[..start]);
    rest.extend_from_slice(&row[start + len..]);
    let boundaries: Vec<usize> = std::iter::once(0)
        .chain((1..=rest.len()).filter(|&p| rest[p - 1] != GAP))
        .filter(|&p| reinserted(&rest, p, len) != row)
        .collect();
    if boundaries.is_empty() {
        return None;
    }
    let at = boundaries[rng.gen_range(0..boundaries.len())];
    Some(reinserted(&rest, at, len))
}

fn reinserted(rest: &[u8], at: usize, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(rest.len() + len);
    out.extend_from_slice(&rest[..at]);
    out.extend(std::iter::repeat_n(GAP, len));
    out.extend_from_slice(&rest[at..]);
    out
}
