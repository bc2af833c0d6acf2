use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use moead_adf::io::parse_newick;
use moead_adf::phylo::{fn_rate, PhyloTree};

use crate::{list_files, read_input, runtime, usage, CliResult};

const TREE_EXTENSIONS: &[&str] = &["nwk", "newick", "tree", "tre"];

#[derive(Debug, Clone, Args)]
pub struct TreecmpArgs {
    /// Reference tree (Newick).
    #[arg(long = "true", value_name = "NEWICK")]
    pub true_tree: PathBuf,
    /// Estimated tree, or a directory of them.
    #[arg(long)]
    pub est: PathBuf,
    /// Second directory compared file-by-file against `--est`.
    #[arg(long)]
    pub paired: Option<PathBuf>,
}

fn load_tree(path: &Path) -> CliResult<PhyloTree> {
    parse_newick(&read_input(path)?).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn tree_files(path: &Path) -> CliResult<Vec<PathBuf>> {
    if path.is_dir() {
        let files = list_files(path, TREE_EXTENSIONS)?;
        if files.is_empty() {
            return Err(usage(format!("{} holds no tree files", path.display())));
        }
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

fn name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

fn rates(truth: &PhyloTree, files: &[PathBuf]) -> CliResult<Vec<f64>> {
    files
        .iter()
        .map(|f| fn_rate(truth, &load_tree(f)?).map_err(|e| runtime(format!("{}: {e}", f.display()))))
        .collect()
}

fn summary(values: &[f64]) -> (f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (min, mean)
}

/// Prints one FN rate per estimated tree, then `min` and `mean` rows. With
/// `--paired`, rows hold both sides and `count` rows give how often each
/// side is strictly lower.
pub(crate) fn run(a: TreecmpArgs, out: &mut dyn Write) -> CliResult<()> {
    let truth = load_tree(&a.true_tree)?;
    let est_files = tree_files(&a.est)?;
    let est = rates(&truth, &est_files)?;
    let mut text = String::new();
    match &a.paired {
        None => {
            text.push_str("tree\tfn_rate\n");
            for (f, r) in est_files.iter().zip(&est) {
                text.push_str(&format!("{}\t{r}\n", name(f)));
            }
            let (min, mean) = summary(&est);
            text.push_str(&format!("min\t{min}\nmean\t{mean}\n"));
        }
        Some(dir) => {
            let other_files: Vec<PathBuf> = est_files.iter().map(|f| dir.join(f.file_name().unwrap())).collect();
            if let Some(missing) = other_files.iter().find(|f| !f.is_file()) {
                return Err(usage(format!("{} has no counterpart {}", dir.display(), missing.display())));
            }
            let other = rates(&truth, &other_files)?;
            text.push_str("tree\tfn_est\tfn_paired\n");
            for ((f, x), y) in est_files.iter().zip(&est).zip(&other) {
                text.push_str(&format!("{}\t{x}\t{y}\n", name(f)));
            }
            let (min_a, mean_a) = summary(&est);
            let (min_b, mean_b) = summary(&other);
            let est_better = est.iter().zip(&other).filter(|(x, y)| x < y).count();
            let paired_better = est.iter().zip(&other).filter(|(x, y)| y < x).count();
            text.push_str(&format!("min\t{min_a}\t{min_b}\nmean\t{mean_a}\t{mean_b}\n"));
            text.push_str(&format!("count\t{est_better}\t{paired_better}\n"));
        }
    }
    out.write_all(text.as_bytes()).map_err(runtime)
}
