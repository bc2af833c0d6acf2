//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p moead-adf-cli --test acceptance -- --nocapture` or simply
//! as part of `cargo test`; the process exits non-zero if any check fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use common::{blosum_lookup, brute_force, brute_force_front, random_alignment, random_binary_tree};
use moead_adf::decomp::{
    allocate_effort, chebyshev, fitness_variance, non_dominated_indices, update_ideal, IdealPoint,
    ObjectiveVector, Optimizer, Problem, RunConfig,
};
use moead_adf::io::{generate_weights, parse_fasta, parse_newick, write_alignment, write_newick, FastaRecords};
use moead_adf::msa::{
    gap_objective, shift_closed_gaps, simg, simng, single_point_crossover, sop, AlignedMatrix, MsaProblem,
    Objective, RawSequence, SubstitutionMatrix,
};
use moead_adf::phylo::{fn_rate, neighbor_joining, DistanceMatrix, PhyloTree};
use moead_adf_cli::{bench, BenchArgs, BenchProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const OBJECTIVE_TOL: f64 = 1e-12;
const CHEBYSHEV_TOL: f64 = 1e-12;
const ADF_MARGIN: f64 = 0.01;

const LIMIT_OBJECTIVES: Duration = Duration::from_secs(5);
const LIMIT_OPERATORS: Duration = Duration::from_secs(10);
const LIMIT_NJ: Duration = Duration::from_secs(5);
const LIMIT_MONOTONE: Duration = Duration::from_secs(120);
const LIMIT_BENCH: Duration = Duration::from_secs(120);

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2}s (limit {}s)", t.as_secs_f64(), limit.as_secs()))
    } else {
        Err(format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn objectives_match_brute_force() -> Check {
    let start = Instant::now();
    let table = blosum_lookup();
    let m = SubstitutionMatrix::blosum62();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for case in 0..150 {
        let rows = rng.gen_range(1..=10);
        let cols = rng.gen_range(1..=50);
        let gap_rate = rng.gen_range(0.0..0.6);
        let aln = random_alignment(&mut rng, rows, cols, gap_rate).without_gap_columns();
        let want = brute_force(aln.rows(), &table);
        let got = [simg(&aln), simng(&aln), sop(&aln, &m).map_err(|e| e.to_string())?, gap_objective(&aln)];
        for (g, w) in got.iter().zip([want.simg, want.simng, want.sop, want.gap]) {
            worst = worst.max((g - w).abs());
            ensure((g - w).abs() <= OBJECTIVE_TOL, || format!("case {case}: {g} vs {w}"))?;
        }
    }
    within(start, LIMIT_OBJECTIVES).map(|t| format!("150 alignments, max error {worst:e}, {t}"))
}

fn valid(aln: &AlignedMatrix, seqs: &[RawSequence]) -> Result<(), String> {
    aln.check_conservation(seqs).map_err(|e| e.to_string())?;
    ensure(aln.rows().iter().all(|r| r.len() == aln.width()), || "ragged rows".into())?;
    ensure((0..aln.width()).all(|c| !aln.is_gap_column(c)), || "all-gap column".into())
}

fn operators_stay_valid() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..1000 {
        let rows = rng.gen_range(2..=10);
        let cols = rng.gen_range(1..=50);
        let a = random_alignment(&mut rng, rows, cols, 0.35).without_gap_columns();
        let seqs = a.raw_sequences();
        let shifted = shift_closed_gaps(&a, &mut rng);
        valid(&shifted, &seqs).map_err(|e| format!("shift {case}: {e}"))?;
        let mut other = a.clone();
        for _ in 0..rng.gen_range(1..4) {
            other = shift_closed_gaps(&other, &mut rng);
        }
        let child = single_point_crossover(&a, &other, &mut rng).map_err(|e| e.to_string())?;
        valid(&child, &seqs).map_err(|e| format!("crossover {case}: {e}"))?;
    }
    within(start, LIMIT_OPERATORS).map(|t| format!("1000 crossovers, 1000 shifts, {t}"))
}

fn ov(v: &[f64]) -> ObjectiveVector {
    ObjectiveVector::new(v.to_vec()).unwrap()
}

fn wv(v: &[f64]) -> moead_adf::decomp::WeightVector {
    moead_adf::decomp::WeightVector::new(v.to_vec()).unwrap()
}

fn scalarization_examples() -> Check {
    let cheb = |f: &[f64], w: &[f64], z: &[f64]| chebyshev(&ov(f), &wv(w).floored(), &IdealPoint::new(z.to_vec())).unwrap();
    let cases = [
        (cheb(&[2.0, 4.0], &[0.5, 0.5], &[0.0, 0.0]), 2.0),
        (cheb(&[3.0, 7.0], &[0.3, 0.7], &[3.0, 7.0]), 0.0),
        (cheb(&[3.0, 5.0], &[1e-6, 1.0 - 1e-6], &[0.0, 0.0]), 4.999995),
    ];
    for (i, (got, want)) in cases.iter().enumerate() {
        ensure((got - want).abs() <= CHEBYSHEV_TOL, || format!("chebyshev example {i}: {got} vs {want}"))?;
    }
    for (s, want) in [(&[1.0, 1.0, 1.0][..], 0.0), (&[0.0, 2.0][..], 1.0), (&[1.0, 2.0, 3.0, 4.0][..], 1.25)] {
        ensure(fitness_variance(s) == want, || format!("fitness_variance {s:?}"))?;
    }
    let alloc = |v: &[f64], b: usize| allocate_effort(v, b, 1).unwrap();
    ensure(alloc(&[0.0, 0.0, 0.0], 30) == [10, 10, 10], || "allocate (0,0,0)".into())?;
    ensure(alloc(&[1.0, 3.0], 8) == [2, 6], || "allocate (1,3)".into())?;
    ensure(alloc(&[1.0, 1.0, 2.0], 5) == [1, 1, 3], || "allocate (1,1,2)".into())?;
    let ideal = |z: &[f64], f: &[f64]| update_ideal(&IdealPoint::new(z.to_vec()), &ov(f)).unwrap().values().to_vec();
    ensure(ideal(&[1.0, 1.0], &[0.0, 2.0]) == [0.0, 1.0], || "update_ideal 1".into())?;
    ensure(ideal(&[0.0, 0.0], &[5.0, 5.0]) == [0.0, 0.0], || "update_ideal 2".into())?;
    ensure(ideal(&[3.0, -1.0, 2.0], &[3.0, -2.0, 2.0]) == [3.0, -2.0, 2.0], || "update_ideal 3".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..1000 {
        let n = rng.gen_range(1..=50);
        let variances: Vec<f64> =
            (0..n).map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..100.0) }).collect();
        let budget = n + rng.gen_range(0..500);
        let a = allocate_effort(&variances, budget, 1).map_err(|e| e.to_string())?;
        ensure(a.iter().sum::<usize>() == budget && a.iter().all(|&x| x >= 1), || {
            format!("random instance {case}: {a:?} for budget {budget}")
        })?;
    }
    Ok("all examples exact, 1000 random allocations sum to budget".into())
}

fn pareto_matches_brute_force() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..200 {
        let m = rng.gen_range(3..=5);
        let n = rng.gen_range(1..=200);
        let coarse = case % 2 == 0;
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| if coarse { rng.gen_range(0..4) as f64 } else { rng.gen::<f64>() }).collect())
            .collect();
        let mut got = non_dominated_indices(&points);
        got.sort_unstable();
        ensure(got == brute_force_front(&points), || format!("set {case} differs"))?;
    }
    Ok("200 sets identical".into())
}

fn nj_recovers_additive_trees() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..50 {
        let n = rng.gen_range(5..=10);
        let t = random_binary_tree(&mut rng, n, (0.1, 2.0));
        let dm = DistanceMatrix::new(t.leaf_labels(), t.path_distances()).map_err(|e| e.to_string())?;
        let est = neighbor_joining(&dm).map_err(|e| e.to_string())?;
        let fnr = fn_rate(&t.to_phylo(), &est).map_err(|e| e.to_string())?;
        ensure(fnr == 0.0, || format!("tree {case}: fn rate {fnr}"))?;
    }
    within(start, LIMIT_NJ).map(|t| format!("50 trees, all fn 0, {t}"))
}

fn fn_rate_fixtures() -> Check {
    let p = |s: &str| parse_newick(s).unwrap();
    let truth = p("((((A,B),C),D),E);");
    let identical = fn_rate(&truth, &truth).map_err(|e| e.to_string())?;
    ensure(identical == 0.0, || format!("identical trees gave {identical}"))?;
    let cat = fn_rate(&truth, &p("((((B,C),A),D),E);")).map_err(|e| e.to_string())?;
    ensure(cat == 0.5, || format!("caterpillar pair gave {cat}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..100 {
        let n = rng.gen_range(4..=15);
        let a = random_binary_tree(&mut rng, n, (0.1, 1.0)).to_phylo();
        let b = random_binary_tree(&mut rng, n, (0.1, 1.0)).to_phylo();
        let (x, y) = (fn_rate(&a, &b).unwrap(), fn_rate(&b, &a).unwrap());
        ensure(x == y, || format!("pair {case}: {x} vs {y}"))?;
    }
    Ok("identical 0, caterpillar 0.5, 100 symmetric pairs".into())
}

const TOY: &str = "\
>s1
MKTAYIAKQRQISFVKSHFSRQ
>s2
MKTAYIAKQRQISFVKSHFSR
>s3
MKSAYIAKQRQLSFVKSHFSRQ
>s4
MKTAYLAKQRQISFVKSHF
>s5
MRTAYIAKQRQISWVKSHFSRQL
>s6
MKTAYIAKQRISFVKSHFSRQ
>s7
MKTAYIAKNRQISFVKAHFSRQ
>s8
MKTVYIAKQRQISFVKSHFSQ
";

fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

fn toy_run_is_monotone() -> Check {
    let start = Instant::now();
    let seqs = parse_fasta(TOY).map_err(|e| e.to_string())?.sequences();
    let problem = MsaProblem::new(seqs, SubstitutionMatrix::blosum62(), Objective::DEFAULT.to_vec())
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let weights = generate_weights(4, 10, &mut rng).map_err(|e| e.to_string())?;
    let seeds = problem.seed(10, &mut rng).map_err(|e| e.to_string())?;
    let mut config = RunConfig::for_subproblems(10);
    config.generations = 10;
    config.rng_seed = 7;
    let mut opt = Optimizer::new(config, &problem, weights, seeds).map_err(|e| e.to_string())?;
    let mut checks = 0;
    while opt.generation() < 10 {
        let before: Vec<ObjectiveVector> =
            opt.subproblems().iter().map(|s| s.incumbent.objectives.clone()).collect();
        opt.step().map_err(|e| e.to_string())?;
        let z = opt.ideal().clone();
        for (sp, old) in opt.subproblems().iter().zip(&before) {
            let w = &sp.scalarizing_weight;
            let now = chebyshev(&sp.incumbent.objectives, w, &z).unwrap();
            let then = chebyshev(old, w, &z).unwrap();
            ensure(now <= then, || format!("generation {}, subproblem {}: {now} > {then}", opt.generation(), sp.index))?;
            checks += 1;
        }
    }
    let archive = opt.result().archive;
    for a in &archive {
        for b in &archive {
            ensure(!dominates(a.objectives.values(), b.objectives.values()), || "archive has a dominated member".into())?;
        }
    }
    within(start, LIMIT_MONOTONE)
        .map(|t| format!("{checks} incumbent checks, archive of {} non-dominated, {t}", archive.len()))
}

fn cli(args: &[&str]) -> Result<(), String> {
    let mut argv = vec!["moead-adf"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    match moead_adf_cli::run(argv, &mut out, &mut err) {
        0 => Ok(()),
        code => Err(format!("exit {code}: {}", String::from_utf8_lossy(&err))),
    }
}

/// Every file under `root` keyed by relative path. The manifest's `out=`
/// line names the directory itself and is dropped.
fn tree_contents(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
                continue;
            }
            let rel = path.strip_prefix(root).unwrap().to_path_buf();
            let mut bytes = fs::read(&path).unwrap();
            if rel == Path::new("manifest.txt") {
                let text = String::from_utf8(bytes).unwrap();
                bytes = text.lines().filter(|l| !l.starts_with("out=")).collect::<Vec<_>>().join("\n").into_bytes();
            }
            out.insert(rel, bytes);
        }
    }
    out
}

fn optimize_is_deterministic() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let seqs = d.join("toy.fasta");
    fs::write(&seqs, TOY).map_err(|e| e.to_string())?;
    let s = |p: &Path| p.to_str().unwrap().to_owned();
    cli(&[
        "optimize", "--sequences", &s(&seqs), "--gen-weights", "4,10", "--generations", "5", "--seed", "11",
        "--threads", "1", "--tree-every-gen", "--out", &s(&d.join("first")),
    ])?;
    let manifest = d.join("manifest.txt");
    fs::copy(d.join("first/manifest.txt"), &manifest).map_err(|e| e.to_string())?;
    for run in ["a", "b"] {
        cli(&["optimize", "--manifest", &s(&manifest), "--threads", "1", "--out", &s(&d.join(run))])?;
    }
    let a = tree_contents(&d.join("a"));
    ensure(a == tree_contents(&d.join("b")), || "two manifest runs differ".into())?;
    ensure(a == tree_contents(&d.join("first")), || "manifest run differs from the original".into())?;
    cli(&["optimize", "--manifest", &s(&manifest), "--threads", "1", "--out", &s(&d.join("a"))])?;
    ensure(a == tree_contents(&d.join("a")), || "rerun into the same directory differs".into())?;
    Ok(format!("{} files identical across runs", a.len()))
}

fn adf_does_not_hurt() -> Check {
    let start = Instant::now();
    let report = bench(&BenchArgs {
        problem: BenchProblem::Zdt1,
        vars: 10,
        subproblems: 20,
        generations: 100,
        replicates: 10,
        seed: 0,
        budget: None,
        k: None,
        threads: None,
    })
    .map_err(|e| e.to_string())?;
    let (adf, uni) = (report.median_adf(), report.median_uniform());
    ensure(adf >= uni - ADF_MARGIN * uni, || format!("median ADF {adf} < median uniform {uni} - 1%"))?;
    within(start, LIMIT_BENCH).map(|t| format!("median hv ADF {adf:.4}, uniform {uni:.4}, {t}"))
}

/// Leaf set on the far side of each edge, mapped to the edge length.
fn edge_lengths(t: &PhyloTree) -> BTreeMap<BTreeSet<String>, Option<f64>> {
    let mut out = BTreeMap::new();
    let smallest = t.leaf_labels()[0].clone();
    for (u, v, l) in t.edges() {
        let mut side = BTreeSet::new();
        let mut stack = vec![(v, u)];
        while let Some((x, from)) = stack.pop() {
            if t.is_leaf(x) {
                side.insert(t.label(x).unwrap().to_owned());
            }
            stack.extend(t.neighbors(x).iter().filter(|(y, _)| *y != from).map(|&(y, _)| (y, x)));
        }
        if side.contains(&smallest) {
            side = t.leaf_labels().into_iter().filter(|x| !side.contains(x)).collect();
        }
        out.insert(side, l);
    }
    out
}

fn io_round_trips() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut fasta = 0;
    while fasta < 100 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=150);
        let aln = random_alignment(&mut rng, rows, cols, 0.3).without_gap_columns();
        if aln.total_gaps() == 0 {
            continue;
        }
        let back = parse_fasta(&write_alignment(&aln)).map_err(|e| e.to_string())?;
        ensure(back == FastaRecords::Aligned(aln.clone()), || format!("fasta case {fasta} differs"))?;
        fasta += 1;
    }
    for case in 0..100 {
        let n = rng.gen_range(3..=30);
        let t = random_binary_tree(&mut rng, n, (0.0, 3.0));
        let root = rng.gen_range(0..t.labels.len());
        let parsed = parse_newick(&t.newick(root)).map_err(|e| e.to_string())?;
        let text = write_newick(&parsed);
        let back = parse_newick(&text).map_err(|e| e.to_string())?;
        ensure(edge_lengths(&back) == edge_lengths(&parsed), || format!("newick case {case}: edges differ"))?;
        ensure(write_newick(&back) == text, || format!("newick case {case}: text not stable"))?;
    }
    Ok("100 FASTA and 100 Newick instances exact".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("objective oracle equivalence", objectives_match_brute_force),
        ("operator validity", operators_stay_valid),
        ("scalarization unit suite", scalarization_examples),
        ("pareto filter vs brute force", pareto_matches_brute_force),
        ("NJ additive recovery", nj_recovers_additive_trees),
        ("FN-rate fixtures", fn_rate_fixtures),
        ("monotone incumbents on a toy MSA run", toy_run_is_monotone),
        ("deterministic optimize output", optimize_is_deterministic),
        ("ADF ablation sanity", adf_does_not_hurt),
        ("I/O round trips", io_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
