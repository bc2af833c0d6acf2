use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use moead_adf::io::{parse_fasta, parse_matrix};
use moead_adf::msa::{maximization_scores, Objective, SubstitutionMatrix};

use crate::{read_input, runtime, usage, CliResult};

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    /// Aligned FASTA to score.
    #[arg(long)]
    pub alignment: PathBuf,
    /// Comma-separated objectives.
    #[arg(long, default_value = "simg,simng,sop,gap")]
    pub objectives: String,
    /// Substitution matrix file [default: built-in BLOSUM62].
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

/// Prints `objective  score  engine` rows: the score as maximized and the
/// negated value the engine minimizes.
pub(crate) fn run(a: ScoreArgs, out: &mut dyn Write) -> CliResult<()> {
    let objectives = Objective::parse_list(&a.objectives).map_err(usage)?;
    let matrix = match &a.matrix {
        Some(p) => parse_matrix(&read_input(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => SubstitutionMatrix::blosum62(),
    };
    let aln = parse_fasta(&read_input(&a.alignment)?)
        .and_then(|f| f.into_alignment())
        .map_err(|e| runtime(format!("{}: {e}", a.alignment.display())))?;
    for row in aln.rows() {
        matrix.check_symbols(row.iter().copied().filter(|&s| s != b'-').collect::<Vec<_>>().as_slice()).map_err(runtime)?;
    }
    let scores = maximization_scores(&aln, &objectives, &matrix).map_err(runtime)?;
    let mut text = String::from("objective\tscore\tengine\n");
    for (o, s) in objectives.iter().zip(&scores) {
        text.push_str(&format!("{}\t{}\t{}\n", o.name(), s, 0.0 - s));
    }
    out.write_all(text.as_bytes()).map_err(runtime)
}
