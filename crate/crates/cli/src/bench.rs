use std::io::Write;

use clap::{Args, ValueEnum};
use moead_adf::decomp::{hypervolume_2d, run as run_engine, Problem, RunConfig, WeightVector, Zdt1};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{runtime, usage, CliResult};

const SEED_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BenchProblem {
    Zdt1,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "zdt1")]
    pub problem: BenchProblem,
    /// Decision variables.
    #[arg(long, default_value_t = 10)]
    pub vars: usize,
    /// Subproblems (evenly spaced 2-D weights).
    #[arg(long, default_value_t = 20)]
    pub subproblems: usize,
    #[arg(long, default_value_t = 100)]
    pub generations: usize,
    #[arg(long, default_value_t = 10)]
    pub replicates: usize,
    /// Base seed; replicate r uses seed + r in both arms.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Offspring per generation [default: 2N].
    #[arg(long)]
    pub budget: Option<usize>,
    /// Neighborhood size [default: min(N, 10)].
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Per-replicate hypervolumes for both arms.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub reference: [f64; 2],
    pub seeds: Vec<u64>,
    pub adf: Vec<f64>,
    pub uniform: Vec<f64>,
}

impl BenchReport {
    pub fn median_adf(&self) -> f64 {
        median(&self.adf)
    }

    pub fn median_uniform(&self) -> f64 {
        median(&self.uniform)
    }

    /// Median of the paired differences `adf - uniform`.
    pub fn median_difference(&self) -> f64 {
        let d: Vec<f64> = self.adf.iter().zip(&self.uniform).map(|(a, u)| a - u).collect();
        median(&d)
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn spread_weights(n: usize) -> Vec<WeightVector> {
    (0..n)
        .map(|i| {
            let a = i as f64 / (n - 1) as f64;
            WeightVector::normalized(vec![a, 1.0 - a]).expect("valid simplex point")
        })
        .collect()
}

/// Runs the paired ablation. Both arms of a replicate share the seed, the
/// initial population and every other setting; only effort allocation
/// differs. The reference point is (1.1, 1.1 * f2max) with f2max taken over
/// all replicates' initial populations.
pub fn bench(a: &BenchArgs) -> CliResult<BenchReport> {
    let BenchProblem::Zdt1 = a.problem;
    let problem = Zdt1::new(a.vars).map_err(usage)?;
    let n = a.subproblems;
    if n < 2 {
        return Err(usage("--subproblems must be at least 2"));
    }
    if a.replicates == 0 {
        return Err(usage("--replicates must be at least 1"));
    }
    let mut config = RunConfig::for_subproblems(n);
    config.generations = a.generations;
    if let Some(b) = a.budget {
        config.per_generation_budget = b;
    }
    if let Some(k) = a.k {
        config.neighborhood_k = k;
    }
    config.threads = a.threads.unwrap_or(1);
    config.validate(n).map_err(usage)?;

    let seeds: Vec<u64> = (0..a.replicates as u64).map(|r| a.seed.wrapping_add(r)).collect();
    let populations: Vec<Vec<Vec<f64>>> = seeds
        .iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            rng.set_stream(SEED_STREAM);
            problem.seed(n, &mut rng).map_err(runtime)
        })
        .collect::<CliResult<_>>()?;
    let f2max = populations
        .iter()
        .flatten()
        .map(|x| problem.objectives(x)[1])
        .fold(f64::NEG_INFINITY, f64::max);
    let reference = [1.1, 1.1 * f2max];

    let weights = spread_weights(n);
    let mut report = BenchReport { reference, seeds: seeds.clone(), adf: Vec::new(), uniform: Vec::new() };
    for (&s, pop) in seeds.iter().zip(&populations) {
        for adf in [true, false] {
            let cfg = RunConfig { rng_seed: s, adf_enabled: adf, ..config.clone() };
            let result = run_engine(cfg, &problem, weights.clone(), pop.clone()).map_err(runtime)?;
            let points: Vec<[f64; 2]> =
                result.incumbents.iter().map(|ind| [ind.objectives.values()[0], ind.objectives.values()[1]]).collect();
            let hv = hypervolume_2d(&points, reference);
            if adf { report.adf.push(hv) } else { report.uniform.push(hv) }
        }
    }
    Ok(report)
}

pub(crate) fn run(a: BenchArgs, out: &mut dyn Write) -> CliResult<()> {
    let report = bench(&a)?;
    let mut text = format!("# reference\t{}\t{}\n", report.reference[0], report.reference[1]);
    text.push_str("replicate\tseed\thv_adf\thv_uniform\tdiff\n");
    for (i, s) in report.seeds.iter().enumerate() {
        let (x, y) = (report.adf[i], report.uniform[i]);
        text.push_str(&format!("{i}\t{s}\t{x}\t{y}\t{}\n", x - y));
    }
    text.push_str(&format!(
        "median\t-\t{}\t{}\t{}\n",
        report.median_adf(),
        report.median_uniform(),
        report.median_difference()
    ));
    out.write_all(text.as_bytes()).map_err(runtime)
}
