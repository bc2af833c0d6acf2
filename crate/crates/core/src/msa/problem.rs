use rand::RngCore;

use super::objectives::{evaluate, Objective};
use super::operators::{shift_closed_gaps, single_point_crossover};
use super::seed::seed_population;
use super::{AlignedMatrix, MsaError, RawSequence, SubstitutionMatrix};
use crate::decomp::Problem;

/// Multiple sequence alignment as an engine problem.
///
/// Genotypes are alignments of `sequences`; offspring come from
/// [`single_point_crossover`] followed by [`shift_closed_gaps`].
#[derive(Debug, Clone)]
pub struct MsaProblem {
    sequences: Vec<RawSequence>,
    matrix: SubstitutionMatrix,
    objectives: Vec<Objective>,
}

impl MsaProblem {
    pub fn new(
        sequences: Vec<RawSequence>,
        matrix: SubstitutionMatrix,
        objectives: Vec<Objective>,
    ) -> Result<Self, MsaError> {
        if sequences.len() < 2 {
            return Err(MsaError::Config(format!(
                "need at least 2 sequences, got {}",
                sequences.len()
            )));
        }
        if objectives.len() < 2 {
            return Err(MsaError::Config("select at least two objectives".into()));
        }
        if objectives.contains(&Objective::Parsimony) && sequences.len() < 3 {
            return Err(MsaError::Config("the parsimony objective needs at least 3 sequences".into()));
        }
        for s in &sequences {
            matrix.check_symbols(s.residues())?;
        }
        Ok(Self { sequences, matrix, objectives })
    }

    pub fn sequences(&self) -> &[RawSequence] {
        &self.sequences
    }

    pub fn matrix(&self) -> &SubstitutionMatrix {
        &self.matrix
    }

    pub fn objectives(&self) -> &[Objective] {
        &self.objectives
    }

    /// Checks that `aln` aligns exactly this problem's sequences and drops
    /// all-gap columns.
    pub fn accept(&self, aln: &AlignedMatrix) -> Result<AlignedMatrix, MsaError> {
        super::normalize_alignment(aln, &self.sequences)
    }
}

impl Problem for MsaProblem {
    type Genotype = AlignedMatrix;
    type Error = MsaError;

    fn objective_count(&self) -> usize {
        self.objectives.len()
    }

    fn evaluate(&self, aln: &AlignedMatrix) -> Result<Vec<f64>, MsaError> {
        evaluate(aln, &self.objectives, &self.matrix)
    }

    fn crossover(
        &self,
        a: &AlignedMatrix,
        b: &AlignedMatrix,
        rng: &mut dyn RngCore,
    ) -> Result<AlignedMatrix, MsaError> {
        single_point_crossover(a, b, rng)
    }

    fn mutate(&self, aln: &AlignedMatrix, rng: &mut dyn RngCore) -> Result<AlignedMatrix, MsaError> {
        Ok(shift_closed_gaps(aln, rng))
    }

    fn seed(&self, count: usize, rng: &mut dyn RngCore) -> Result<Vec<AlignedMatrix>, MsaError> {
        seed_population(&self.sequences, count, &self.matrix, rng)
    }
}
