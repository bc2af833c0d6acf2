use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser};
use moead_adf::decomp::{non_dominated_indices, EngineError, Optimizer, RunConfig, WeightVector};
use moead_adf::io::{
    generate_weights, parse_fasta, parse_matrix, parse_weights, write_alignment, write_newick, Manifest,
};
use moead_adf::msa::{maximization_scores, AlignedMatrix, MsaProblem, Objective, SubstitutionMatrix};
use moead_adf::phylo::{neighbor_joining, pairwise_distance, PhyloTree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{list_files, read_input, runtime, usage, write_file, CliResult};

const SEED_STREAM: u64 = 1;
const WEIGHT_STREAM: u64 = 2;

#[derive(Debug, Clone, Default, Args)]
#[command(args_override_self = true)]
pub struct OptimizeArgs {
    /// Input sequences (FASTA; gaps are removed).
    #[arg(long)]
    pub sequences: Option<PathBuf>,
    /// Weight-vector table, one vector per line.
    #[arg(long, conflicts_with = "gen_weights")]
    pub weights: Option<PathBuf>,
    /// Generate weights as `m,count`.
    #[arg(long, value_name = "M,COUNT")]
    pub gen_weights: Option<String>,
    /// Generations to run [default: 50].
    #[arg(long)]
    pub generations: Option<usize>,
    /// Neighborhood size [default: min(N, 10)].
    #[arg(long)]
    pub k: Option<usize>,
    /// Offspring per generation [default: 2N].
    #[arg(long)]
    pub budget: Option<usize>,
    /// Maximum neighbors one offspring may replace [default: 2].
    #[arg(long)]
    pub cap: Option<usize>,
    /// Random seed [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated objectives from simg, simng, sop, gap, parsimony.
    #[arg(long)]
    pub objectives: Option<String>,
    /// Directory of FASTA alignments used as the first seeds.
    #[arg(long)]
    pub seed_alignments: Option<PathBuf>,
    /// Split the budget equally instead of by fitness variance.
    #[arg(long)]
    pub no_adf: bool,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Substitution matrix file [default: built-in BLOSUM62].
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Worker threads for evaluation [default: 1].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Also write every subproblem's tree after each generation.
    #[arg(long)]
    pub tree_every_gen: bool,
    /// Replay a manifest; flags given alongside override its values.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(no_binary_name = true)]
struct Replay {
    #[command(flatten)]
    args: OptimizeArgs,
}

impl OptimizeArgs {
    fn merged_with_manifest(self) -> CliResult<OptimizeArgs> {
        let Some(path) = self.manifest.clone() else {
            return Ok(self);
        };
        let manifest = Manifest::parse(&read_input(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let mut argv = Vec::new();
        for (k, v) in manifest.entries() {
            if k == "manifest" {
                return Err(usage("a manifest cannot reference another manifest"));
            }
            match v.as_str() {
                "true" => argv.push(format!("--{k}")),
                "false" => {}
                _ => {
                    argv.push(format!("--{k}"));
                    argv.push(v.clone());
                }
            }
        }
        let base = Replay::try_parse_from(argv).map_err(|e| usage(format!("{}: {e}", path.display())))?.args;
        let explicit_weights = self.weights.is_some() || self.gen_weights.is_some();
        let (weights, gen_weights) =
            if explicit_weights { (self.weights, self.gen_weights) } else { (base.weights, base.gen_weights) };
        Ok(OptimizeArgs {
            sequences: self.sequences.or(base.sequences),
            weights,
            gen_weights,
            generations: self.generations.or(base.generations),
            k: self.k.or(base.k),
            budget: self.budget.or(base.budget),
            cap: self.cap.or(base.cap),
            seed: self.seed.or(base.seed),
            objectives: self.objectives.or(base.objectives),
            seed_alignments: self.seed_alignments.or(base.seed_alignments),
            no_adf: self.no_adf || base.no_adf,
            out: self.out.or(base.out),
            matrix: self.matrix.or(base.matrix),
            threads: self.threads.or(base.threads),
            tree_every_gen: self.tree_every_gen || base.tree_every_gen,
            manifest: None,
        })
    }
}

enum WeightSource {
    File(PathBuf),
    Generated(usize, usize),
}

/// Flags with defaults filled in.
struct Resolved {
    sequences: PathBuf,
    weights: WeightSource,
    objectives: Vec<Objective>,
    seed_alignments: Option<PathBuf>,
    matrix: Option<PathBuf>,
    out: PathBuf,
    tree_every_gen: bool,
    config: RunConfig,
    k: Option<usize>,
    budget: Option<usize>,
}

fn resolve(a: OptimizeArgs) -> CliResult<Resolved> {
    let sequences = a.sequences.ok_or_else(|| usage("--sequences is required"))?;
    let out = a.out.ok_or_else(|| usage("--out is required"))?;
    let objectives = Objective::parse_list(a.objectives.as_deref().unwrap_or("simg,simng,sop,gap")).map_err(usage)?;
    let weights = match (a.weights, a.gen_weights) {
        (Some(p), None) => WeightSource::File(p),
        (None, Some(text)) => {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
            match parsed.as_deref() {
                Some(&[m, count]) => WeightSource::Generated(m, count),
                _ => return Err(usage(format!("--gen-weights expects m,count, got `{text}`"))),
            }
        }
        (Some(_), Some(_)) => return Err(usage("--weights and --gen-weights are mutually exclusive")),
        (None, None) => return Err(usage("one of --weights or --gen-weights is required")),
    };
    let mut config = RunConfig::for_subproblems(2);
    config.generations = a.generations.unwrap_or(50);
    config.replacement_cap = a.cap.unwrap_or(2);
    config.rng_seed = a.seed.unwrap_or(0);
    config.adf_enabled = !a.no_adf;
    config.threads = a.threads.unwrap_or(1);
    Ok(Resolved {
        sequences,
        weights,
        objectives,
        seed_alignments: a.seed_alignments,
        matrix: a.matrix,
        out,
        tree_every_gen: a.tree_every_gen,
        config,
        k: a.k,
        budget: a.budget,
    })
}

fn manifest_of(r: &Resolved) -> Manifest {
    let mut m = Manifest::new();
    m.set("sequences", r.sequences.display());
    match &r.weights {
        WeightSource::File(p) => m.set("weights", p.display()),
        WeightSource::Generated(dim, count) => m.set("gen-weights", format!("{dim},{count}")),
    }
    m.set("generations", r.config.generations);
    m.set("k", r.config.neighborhood_k);
    m.set("budget", r.config.per_generation_budget);
    m.set("cap", r.config.replacement_cap);
    m.set("seed", r.config.rng_seed);
    let names: Vec<&str> = r.objectives.iter().map(|o| o.name()).collect();
    m.set("objectives", names.join(","));
    if let Some(p) = &r.seed_alignments {
        m.set("seed-alignments", p.display());
    }
    m.set("no-adf", !r.config.adf_enabled);
    m.set("out", r.out.display());
    if let Some(p) = &r.matrix {
        m.set("matrix", p.display());
    }
    m.set("threads", r.config.threads);
    m.set("tree-every-gen", r.tree_every_gen);
    m
}

fn engine_error(e: EngineError) -> crate::CliError {
    match e {
        EngineError::Config(_) | EngineError::DimensionMismatch { .. } => usage(e),
        other => runtime(other),
    }
}

pub(crate) fn run(args: OptimizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mut r = resolve(args.merged_with_manifest()?)?;

    let sequences = parse_fasta(&read_input(&r.sequences)?)
        .map_err(|e| runtime(format!("{}: {e}", r.sequences.display())))?
        .sequences();
    let matrix = match &r.matrix {
        Some(p) => parse_matrix(&read_input(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => SubstitutionMatrix::blosum62(),
    };
    let m = r.objectives.len();
    let weights: Vec<WeightVector> = match &r.weights {
        WeightSource::File(p) => {
            parse_weights(&read_input(p)?, m).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        WeightSource::Generated(dim, count) => {
            if *dim != m {
                return Err(usage(format!("--gen-weights dimension {dim} does not match {m} objectives")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(r.config.rng_seed);
            rng.set_stream(WEIGHT_STREAM);
            generate_weights(*dim, *count, &mut rng).map_err(usage)?
        }
    };
    let n = weights.len();
    let defaults = RunConfig::for_subproblems(n);
    r.config.neighborhood_k = r.k.unwrap_or(defaults.neighborhood_k);
    r.config.per_generation_budget = r.budget.unwrap_or(defaults.per_generation_budget);
    r.config.validate(n).map_err(engine_error)?;

    let problem = MsaProblem::new(sequences, matrix, r.objectives.clone()).map_err(usage)?;
    let seeds = build_seeds(&problem, &r, n)?;

    let mut opt = Optimizer::new(r.config.clone(), &problem, weights, seeds).map_err(engine_error)?;
    let with_trees = problem.sequences().len() >= 3;
    if !with_trees {
        writeln!(err, "note: fewer than 3 sequences, no trees written").map_err(runtime)?;
    }
    if r.tree_every_gen && with_trees {
        write_generation_trees(&r.out, &opt)?;
    }
    while opt.generation() < r.config.generations {
        opt.step().map_err(engine_error)?;
        if r.tree_every_gen && with_trees {
            write_generation_trees(&r.out, &opt)?;
        }
    }

    let subs = opt.subproblems();
    for sp in subs {
        let aln = &sp.incumbent.genotype;
        write_file(&r.out.join("alignments").join(format!("sub_{:03}.fasta", sp.index)), &write_alignment(aln))?;
        if with_trees {
            let tree = nj_tree(aln)?;
            write_file(&r.out.join("trees").join(format!("sub_{:03}.nwk", sp.index)), &write_newick(&tree))?;
        }
    }
    write_file(&r.out.join("objectives.tsv"), &objective_table(&opt, &problem)?)?;
    write_file(&r.out.join("snapshot.txt"), &opt.snapshot().to_text())?;
    write_file(&r.out.join("manifest.txt"), &manifest_of(&r).to_text())?;
    writeln!(out, "wrote {n} subproblems to {}", r.out.display()).map_err(runtime)?;
    Ok(())
}

/// Alignments from `--seed-alignments` first (sorted by file name), then
/// generated seeds for the remaining subproblems.
fn build_seeds(problem: &MsaProblem, r: &Resolved, n: usize) -> CliResult<Vec<AlignedMatrix>> {
    let mut seeds = Vec::new();
    if let Some(dir) = &r.seed_alignments {
        for path in list_files(dir, &["fasta", "fa", "afa", "fas"])?.into_iter().take(n) {
            let aln = parse_fasta(&read_input(&path)?)
                .and_then(|f| f.into_alignment())
                .map_err(|e| runtime(format!("{}: {e}", path.display())))?;
            let aln = problem.accept(&aln).map_err(|e| runtime(format!("{}: {e}", path.display())))?;
            seeds.push(aln);
        }
    }
    if seeds.len() < n {
        let mut rng = ChaCha8Rng::seed_from_u64(r.config.rng_seed);
        rng.set_stream(SEED_STREAM);
        let generated = moead_adf::decomp::Problem::seed(problem, n - seeds.len(), &mut rng).map_err(runtime)?;
        seeds.extend(generated);
    }
    Ok(seeds)
}

fn nj_tree(aln: &AlignedMatrix) -> CliResult<PhyloTree> {
    let dm = pairwise_distance(aln).map_err(runtime)?;
    neighbor_joining(&dm).map_err(runtime)
}

fn write_generation_trees(out: &Path, opt: &Optimizer<'_, MsaProblem>) -> CliResult<()> {
    let dir = out.join("generations").join(format!("gen_{:03}", opt.generation()));
    for sp in opt.subproblems() {
        let tree = nj_tree(&sp.incumbent.genotype)?;
        write_file(&dir.join(format!("sub_{:03}.nwk", sp.index)), &write_newick(&tree))?;
    }
    Ok(())
}

/// One row per subproblem: weights, objective scores as maximized,
/// Chebyshev value under the final ideal point, Pareto membership.
fn objective_table(opt: &Optimizer<'_, MsaProblem>, problem: &MsaProblem) -> CliResult<String> {
    let objectives = problem.objectives();
    let mut header = vec!["index".to_string()];
    header.extend(objectives.iter().map(|o| format!("w_{}", o.name())));
    header.extend(objectives.iter().map(|o| o.name().to_string()));
    header.push("chebyshev".into());
    header.push("pareto".into());

    let subs = opt.subproblems();
    let points: Vec<&[f64]> = subs.iter().map(|sp| sp.incumbent.objectives.values()).collect();
    let mut front = vec![false; subs.len()];
    for i in non_dominated_indices(&points) {
        front[i] = true;
    }

    let mut text = header.join("\t");
    text.push('\n');
    for (i, sp) in subs.iter().enumerate() {
        let scores =
            maximization_scores(&sp.incumbent.genotype, objectives, problem.matrix()).map_err(runtime)?;
        let mut row = vec![sp.index.to_string()];
        row.extend(sp.weight.components().iter().map(f64::to_string));
        row.extend(scores.iter().map(f64::to_string));
        row.push(opt.incumbent_value(i).to_string());
        row.push(u8::from(front[i]).to_string());
        text.push_str(&row.join("\t"));
        text.push('\n');
    }
    Ok(text)
}
