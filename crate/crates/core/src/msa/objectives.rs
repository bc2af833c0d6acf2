//! Alignment quality scores.
//!
//! All four are "higher is better". Column ratios use the count of the most
//! frequent residue over the number of rows, so gaps only ever shrink a
//! ratio. Pairs involving a gap score 0 in the sum of pairs.

use std::fmt;
use std::str::FromStr;

use super::{AlignedMatrix, MsaError, SubstitutionMatrix, GAP};
use crate::phylo;

/// Count of the most frequent non-gap symbol in column `c`, and whether the
/// column holds any gap.
fn column_majority(aln: &AlignedMatrix, c: usize) -> (usize, bool) {
    let mut counts = [0usize; 256];
    let mut has_gap = false;
    for s in aln.column(c) {
        if s == GAP {
            has_gap = true;
        } else {
            counts[s.to_ascii_uppercase() as usize] += 1;
        }
    }
    (counts.iter().copied().max().unwrap_or(0), has_gap)
}

fn ratio_sum(aln: &AlignedMatrix, gapped: bool) -> f64 {
    let rows = aln.num_rows() as f64;
    (0..aln.width())
        .map(|c| column_majority(aln, c))
        .filter(|&(_, has_gap)| has_gap == gapped)
        .map(|(top, _)| top as f64 / rows)
        .sum()
}

/// Majority-residue ratio summed over columns that contain a gap.
pub fn simg(aln: &AlignedMatrix) -> f64 {
    ratio_sum(aln, true)
}

/// Majority-residue ratio summed over gap-free columns.
pub fn simng(aln: &AlignedMatrix) -> f64 {
    ratio_sum(aln, false)
}

/// Sum over row pairs and columns of the substitution score of two residues.
pub fn sop(aln: &AlignedMatrix, matrix: &SubstitutionMatrix) -> Result<f64, MsaError> {
    let mut total: i64 = 0;
    let mut counts = [0i64; 256];
    let mut present: Vec<u8> = Vec::new();
    for c in 0..aln.width() {
        present.clear();
        for s in aln.column(c) {
            if s == GAP {
                continue;
            }
            let s = s.to_ascii_uppercase();
            if counts[s as usize] == 0 {
                present.push(s);
            }
            counts[s as usize] += 1;
        }
        for (i, &a) in present.iter().enumerate() {
            let ca = counts[a as usize];
            total += ca * (ca - 1) / 2 * i64::from(matrix.score(a, a)?);
            for &b in &present[i + 1..] {
                total += ca * counts[b as usize] * i64::from(matrix.score(a, b)?);
            }
        }
        for &a in &present {
            counts[a as usize] = 0;
        }
    }
    Ok(total as f64)
}

/// Negated total gap count.
pub fn gap_objective(aln: &AlignedMatrix) -> f64 {
    -(aln.total_gaps() as f64)
}

/// Negated Fitch parsimony of the neighbor-joining tree built from the
/// alignment's p-distances. Needs at least three rows.
pub fn parsimony_objective(aln: &AlignedMatrix) -> Result<f64, MsaError> {
    let dm = phylo::pairwise_distance(aln)?;
    let tree = phylo::neighbor_joining(&dm)?;
    Ok(-(phylo::parsimony_score(&tree, aln)? as f64))
}

/// One selectable alignment objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Simg,
    Simng,
    Sop,
    Gap,
    Parsimony,
}

impl Objective {
    pub const DEFAULT: [Objective; 4] =
        [Objective::Simg, Objective::Simng, Objective::Sop, Objective::Gap];

    pub fn name(self) -> &'static str {
        match self {
            Objective::Simg => "simg",
            Objective::Simng => "simng",
            Objective::Sop => "sop",
            Objective::Gap => "gap",
            Objective::Parsimony => "parsimony",
        }
    }

    /// Score in "higher is better" orientation.
    pub fn score(self, aln: &AlignedMatrix, matrix: &SubstitutionMatrix) -> Result<f64, MsaError> {
        match self {
            Objective::Simg => Ok(simg(aln)),
            Objective::Simng => Ok(simng(aln)),
            Objective::Sop => sop(aln, matrix),
            Objective::Gap => Ok(gap_objective(aln)),
            Objective::Parsimony => parsimony_objective(aln),
        }
    }

    /// Parses a comma-separated list such as `simg,simng,sop,gap`.
    pub fn parse_list(text: &str) -> Result<Vec<Objective>, MsaError> {
        let list = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Objective>, _>>()?;
        if list.len() < 2 {
            return Err(MsaError::Config("select at least two objectives".into()));
        }
        for (i, o) in list.iter().enumerate() {
            if list[..i].contains(o) {
                return Err(MsaError::Config(format!("objective `{o}` listed twice")));
            }
        }
        Ok(list)
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = MsaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "simg" => Ok(Objective::Simg),
            "simng" => Ok(Objective::Simng),
            "sop" => Ok(Objective::Sop),
            "gap" => Ok(Objective::Gap),
            "parsimony" => Ok(Objective::Parsimony),
            _ => Err(MsaError::Config(format!("unknown objective `{s}`"))),
        }
    }
}

/// Scores for each objective, "higher is better".
pub fn maximization_scores(
    aln: &AlignedMatrix,
    objectives: &[Objective],
    matrix: &SubstitutionMatrix,
) -> Result<Vec<f64>, MsaError> {
    // `+ 0.0` folds a negative zero into zero.
    objectives.iter().map(|o| o.score(aln, matrix).map(|s| s + 0.0)).collect()
}

/// The engine's minimization vector: every score negated.
pub fn evaluate(
    aln: &AlignedMatrix,
    objectives: &[Objective],
    matrix: &SubstitutionMatrix,
) -> Result<Vec<f64>, MsaError> {
    Ok(maximization_scores(aln, objectives, matrix)?.into_iter().map(|s| 0.0 - s).collect())
}
