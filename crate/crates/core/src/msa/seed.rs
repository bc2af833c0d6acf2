//! Starting population: one center-star alignment plus gap-shift variants.

use rand::RngCore;

use super::operators::shift_closed_gaps;
use super::{AlignedMatrix, MsaError, RawSequence, SubstitutionMatrix, GAP};

/// Linear gap penalty for the pairwise alignments behind the center star.
pub const SEED_GAP_PENALTY: i32 = -4;

/// Needleman-Wunsch with a linear gap penalty. Returns the score and the
/// two gapped strings. Traceback prefers diagonal, then a gap in `b`, then
/// a gap in `a`.
#[allow(clippy::needless_range_loop)]
pub fn global_align(
    a: &[u8],
    b: &[u8],
    matrix: &SubstitutionMatrix,
    gap: i32,
) -> Result<(i32, Vec<u8>, Vec<u8>), MsaError> {
    let (n, m) = (a.len(), b.len());
    let w = m + 1;
    let mut dp = vec![0i32; (n + 1) * w];
    for i in 1..=n {
        dp[i * w] = gap * i as i32;
    }
    for j in 1..=m {
        dp[j] = gap * j as i32;
    }
    for i in 1..=n {
        for j in 1..=m {
            let diag = dp[(i - 1) * w + j - 1] + matrix.score(a[i - 1], b[j - 1])?;
            let up = dp[(i - 1) * w + j] + gap;
            let left = dp[i * w + j - 1] + gap;
            dp[i * w + j] = diag.max(up).max(left);
        }
    }

    let (mut ra, mut rb) = (Vec::with_capacity(n + m), Vec::with_capacity(n + m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = dp[i * w + j];
        if i > 0 && j > 0 && here == dp[(i - 1) * w + j - 1] + matrix.score(a[i - 1], b[j - 1])? {
            ra.push(a[i - 1]);
            rb.push(b[j - 1]);
            i -= 1;
            j -= 1;
        } else if i > 0 && (j == 0 || here == dp[(i - 1) * w + j] + gap) {
            ra.push(a[i - 1]);
            rb.push(GAP);
            i -= 1;
        } else {
            ra.push(GAP);
            rb.push(b[j - 1]);
            j -= 1;
        }
    }
    ra.reverse();
    rb.reverse();
    Ok((dp[n * w + m], ra, rb))
}

/// Progressive center-star alignment.
///
/// The center is the sequence with the highest summed pairwise score
/// (lowest index on ties). Every other sequence is aligned to it and merged
/// in input order, with gaps once opened in the center kept for everyone.
pub fn center_star(
    seqs: &[RawSequence],
    matrix: &SubstitutionMatrix,
) -> Result<AlignedMatrix, MsaError> {
    if seqs.len() < 2 {
        return Err(MsaError::Config(format!("need at least 2 sequences, got {}", seqs.len())));
    }
    let n = seqs.len();
    let mut pair = vec![vec![None; n]; n];
    let mut totals = vec![0i64; n];
    for i in 0..n {
        for j in i + 1..n {
            let aligned = global_align(seqs[i].residues(), seqs[j].residues(), matrix, SEED_GAP_PENALTY)?;
            totals[i] += i64::from(aligned.0);
            totals[j] += i64::from(aligned.0);
            pair[i][j] = Some(aligned);
        }
    }
    let center = (0..n).fold(0, |best, i| if totals[i] > totals[best] { i } else { best });

    // rows[k] is None until sequence k is merged.
    let mut rows: Vec<Option<Vec<u8>>> = vec![None; n];
    rows[center] = Some(seqs[center].residues().to_vec());
    for k in (0..n).filter(|&k| k != center) {
        let (pc, pk) = match &pair[center.min(k)][center.max(k)] {
            Some((_, x, y)) if center < k => (x.clone(), y.clone()),
            Some((_, x, y)) => (y.clone(), x.clone()),
            None => unreachable!("every pair was aligned"),
        };
        merge(&mut rows, center, &pc, &pk, k);
    }

    let ids = seqs.iter().map(|s| s.id().to_owned()).collect();
    let rows = rows.into_iter().map(|r| r.expect("all rows merged")).collect();
    let aln = AlignedMatrix::new(ids, rows)?.without_gap_columns();
    aln.check_conservation(seqs)?;
    Ok(aln)
}

/// Folds the pairwise alignment (center `pc`, new row `pk`) into the
/// growing multiple alignment.
fn merge(rows: &mut [Option<Vec<u8>>], center: usize, pc: &[u8], pk: &[u8], k: usize) {
    let msa_center = rows[center].clone().expect("center present");
    let placed: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].is_some()).collect();
    let mut next: Vec<Vec<u8>> = vec![Vec::new(); rows.len()];
    let mut new_row = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < msa_center.len() || j < pc.len() {
        let mc = msa_center.get(i).copied();
        let cc = pc.get(j).copied();
        match (mc, cc) {
            // Same column in both: residue/residue or gap/gap.
            (Some(x), Some(y)) if (x == GAP) == (y == GAP) => {
                for &r in &placed {
                    next[r].push(rows[r].as_ref().unwrap()[i]);
                }
                new_row.push(pk[j]);
                i += 1;
                j += 1;
            }
            // Column only the multiple alignment has.
            (Some(GAP), _) => {
                for &r in &placed {
                    next[r].push(rows[r].as_ref().unwrap()[i]);
                }
                new_row.push(GAP);
                i += 1;
            }
            // Column only the pairwise alignment has.
            (_, Some(GAP)) => {
                for &r in &placed {
                    next[r].push(GAP);
                }
                new_row.push(pk[j]);
                j += 1;
            }
            _ => unreachable!("both center rows hold the same residues"),
        }
    }
    for &r in &placed {
        rows[r] = Some(std::mem::take(&mut next[r]));
    }
    rows[k] = Some(new_row);
}

/// `count` seeds: variant `j` is the center-star alignment after `j`
/// successive gap shifts. Variant 0 is the base alignment itself.
pub fn seed_population(
    seqs: &[RawSequence],
    count: usize,
    matrix: &SubstitutionMatrix,
    rng: &mut dyn RngCore,
) -> Result<Vec<AlignedMatrix>, MsaError> {
    if count == 0 {
        return Err(MsaError::Config("seed count must be at least 1".into()));
    }
    let base = center_star(seqs, matrix)?;
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let mut variant = base.clone();
        for _ in 0..j {
            variant = shift_closed_gaps(&variant, rng);
        }
        out.push(variant);
    }
    Ok(out)
}
