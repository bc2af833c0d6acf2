//! The generation loop.
//!
//! Offspring for a generation are bred from the incumbents as they stood
//! when the generation began, in ascending subproblem order, and evaluated
//! (optionally on a thread pool). State is then merged serially in the same
//! order: every offspring first lowers the ideal point, then each offspring
//! in turn is offered to its parent subproblem's neighbors. Because all
//! replacements of one generation are judged against the same ideal point,
//! an incumbent's scalar value under that point never goes up within the
//! generation.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::effort::{allocate_effort, equal_effort, fitness_variance};
use super::neighborhood::build_neighborhoods;
use super::pareto::pareto_filter;
use super::scalarize::chebyshev_unchecked;
use super::snapshot::{Snapshot, SnapshotRecord};
use super::{EngineError, IdealPoint, ObjectiveVector, WeightVector};

/// What the engine needs from a problem domain.
pub trait Problem: Sync {
    type Genotype: Clone + PartialEq + Send + Sync;
    type Error: std::error::Error + Send + Sync + 'static;

    fn objective_count(&self) -> usize;

    /// Objective values in minimization orientation. Must be deterministic.
    fn evaluate(&self, genotype: &Self::Genotype) -> Result<Vec<f64>, Self::Error>;

    fn crossover(
        &self,
        a: &Self::Genotype,
        b: &Self::Genotype,
        rng: &mut dyn RngCore,
    ) -> Result<Self::Genotype, Self::Error>;

    fn mutate(
        &self,
        genotype: &Self::Genotype,
        rng: &mut dyn RngCore,
    ) -> Result<Self::Genotype, Self::Error>;

    fn seed(&self, count: usize, rng: &mut dyn RngCore) -> Result<Vec<Self::Genotype>, Self::Error>;
}

/// A genotype together with its evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<G> {
    pub genotype: G,
    pub objectives: ObjectiveVector,
}

/// One weight vector and the state attached to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Subproblem<G> {
    pub index: usize,
    /// The weight vector as supplied.
    pub weight: WeightVector,
    /// `weight.floored()`, used for every scalarization.
    pub scalarizing_weight: WeightVector,
    pub incumbent: Individual<G>,
    pub neighbors: Vec<usize>,
    /// Scalar values of the offspring bred for this subproblem in the most
    /// recent generation.
    pub fitness_samples: Vec<f64>,
    /// Offspring quota for the next generation.
    pub effort: usize,
}

/// Unlimited replacements per offspring.
pub const UNBOUNDED_REPLACEMENT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub generations: usize,
    pub neighborhood_k: usize,
    /// Offspring bred per generation across all subproblems.
    pub per_generation_budget: usize,
    /// Most neighbor incumbents a single offspring may replace.
    pub replacement_cap: usize,
    pub rng_seed: u64,
    pub effort_floor: usize,
    /// `false` keeps every quota at an equal split (classic MOEA/D).
    pub adf_enabled: bool,
    /// Evaluation threads; 1 evaluates inline.
    pub threads: usize,
}

impl RunConfig {
    /// Defaults sized for `n` subproblems.
    pub fn for_subproblems(n: usize) -> Self {
        Self {
            generations: 50,
            neighborhood_k: n.clamp(2, 10).min(n.max(2)),
            per_generation_budget: 2 * n,
            replacement_cap: 2,
            rng_seed: 0,
            effort_floor: 1,
            adf_enabled: true,
            threads: 1,
        }
    }

    pub fn validate(&self, n: usize) -> Result<(), EngineError> {
        if n < 2 {
            return Err(EngineError::Config(format!("need at least 2 subproblems, got {n}")));
        }
        if self.neighborhood_k < 2 || self.neighborhood_k > n {
            return Err(EngineError::Config(format!(
                "neighborhood size {} outside [2, {n}]",
                self.neighborhood_k
            )));
        }
        if self.effort_floor == 0 {
            return Err(EngineError::Config("effort floor must be at least 1".into()));
        }
        if self.replacement_cap == 0 {
            return Err(EngineError::Config("replacement cap must be at least 1".into()));
        }
        if self.threads == 0 {
            return Err(EngineError::Config("threads must be at least 1".into()));
        }
        if self.per_generation_budget < n * self.effort_floor {
            return Err(EngineError::Config(format!(
                "per-generation budget {} is below {n} subproblems x floor {}",
                self.per_generation_budget, self.effort_floor
            )));
        }
        Ok(())
    }
}

/// Final incumbents plus their non-dominated subset.
#[derive(Debug, Clone)]
pub struct RunResult<G> {
    pub incumbents: Vec<Individual<G>>,
    pub archive: Vec<Individual<G>>,
    pub ideal: IdealPoint,
}

pub struct Optimizer<'p, P: Problem> {
    problem: &'p P,
    config: RunConfig,
    subproblems: Vec<Subproblem<P::Genotype>>,
    ideal: IdealPoint,
    generation: usize,
    rng: ChaCha8Rng,
    pool: Option<rayon::ThreadPool>,
}

impl<'p, P: Problem> Optimizer<'p, P> {
    /// Evaluates the seeds (one per weight vector) and builds neighborhoods.
    pub fn new(
        config: RunConfig,
        problem: &'p P,
        weights: Vec<WeightVector>,
        seeds: Vec<P::Genotype>,
    ) -> Result<Self, EngineError> {
        let n = weights.len();
        if seeds.len() != n {
            return Err(EngineError::Config(format!(
                "{} seeds supplied for {n} weight vectors",
                seeds.len()
            )));
        }
        let pool = build_pool(config.threads)?;
        let objectives = evaluate_all(problem, &seeds, pool.as_ref())?;
        let efforts = equal_effort(n.max(1), config.per_generation_budget);
        let individuals = seeds
            .into_iter()
            .zip(objectives)
            .map(|(genotype, objectives)| Individual { genotype, objectives })
            .collect();
        let rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
        Self::assemble(config, problem, weights, individuals, efforts, None, 0, rng, pool)
    }

    /// Rebuilds an optimizer from a snapshot and the matching incumbents.
    ///
    /// The genotypes are re-evaluated and must reproduce the recorded
    /// objective vectors. The random stream resumes where the snapshot left
    /// it, so a resumed run continues exactly as an uninterrupted one would.
    pub fn resume(
        config: RunConfig,
        problem: &'p P,
        snapshot: &Snapshot,
        genotypes: Vec<P::Genotype>,
    ) -> Result<Self, EngineError> {
        if snapshot.rng_seed != config.rng_seed {
            return Err(EngineError::Config(format!(
                "snapshot was taken with seed {}, config has {}",
                snapshot.rng_seed, config.rng_seed
            )));
        }
        if genotypes.len() != snapshot.records.len() {
            return Err(EngineError::Config(format!(
                "{} genotypes supplied for {} snapshot records",
                genotypes.len(),
                snapshot.records.len()
            )));
        }
        let pool = build_pool(config.threads)?;
        let objectives = evaluate_all(problem, &genotypes, pool.as_ref())?;
        for (rec, obj) in snapshot.records.iter().zip(&objectives) {
            if rec.objectives.as_slice() != obj.values() {
                return Err(EngineError::Config(format!(
                    "subproblem {} re-evaluates to {obj}, snapshot recorded {:?}",
                    rec.index, rec.objectives
                )));
            }
        }
        let weights = snapshot
            .records
            .iter()
            .map(|r| WeightVector::new(r.weight.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let efforts = snapshot.records.iter().map(|r| r.effort).collect();
        let individuals = genotypes
            .into_iter()
            .zip(objectives)
            .map(|(genotype, objectives)| Individual { genotype, objectives })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(snapshot.rng_seed);
        rng.set_word_pos(snapshot.rng_word_pos);
        Self::assemble(
            config,
            problem,
            weights,
            individuals,
            efforts,
            Some(IdealPoint::new(snapshot.ideal.clone())),
            snapshot.generation,
            rng,
            pool,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        config: RunConfig,
        problem: &'p P,
        weights: Vec<WeightVector>,
        individuals: Vec<Individual<P::Genotype>>,
        efforts: Vec<usize>,
        ideal: Option<IdealPoint>,
        generation: usize,
        rng: ChaCha8Rng,
        pool: Option<rayon::ThreadPool>,
    ) -> Result<Self, EngineError> {
        let n = weights.len();
        config.validate(n)?;
        let m = problem.objective_count();
        for w in &weights {
            if w.len() != m {
                return Err(EngineError::DimensionMismatch { expected: m, found: w.len() });
            }
        }
        if efforts.iter().sum::<usize>() != config.per_generation_budget {
            return Err(EngineError::Config("efforts do not sum to the budget".into()));
        }
        let neighborhoods = build_neighborhoods(&weights, config.neighborhood_k)?;
        let ideal = match ideal {
            Some(z) => z,
            None => IdealPoint::from_points(individuals.iter().map(|ind| &ind.objectives))?,
        };
        let subproblems = weights
            .into_iter()
            .zip(individuals)
            .zip(neighborhoods)
            .zip(efforts)
            .enumerate()
            .map(|(index, (((weight, incumbent), neighbors), effort))| Subproblem {
                index,
                scalarizing_weight: weight.floored(),
                weight,
                incumbent,
                neighbors,
                fitness_samples: Vec::new(),
                effort,
            })
            .collect();
        Ok(Self { problem, config, subproblems, ideal, generation, rng, pool })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn subproblems(&self) -> &[Subproblem<P::Genotype>] {
        &self.subproblems
    }

    pub fn ideal(&self) -> &IdealPoint {
        &self.ideal
    }

    /// Generations completed so far.
    pub fn generation(&self) -> usize {
        self.generation
    }

    /// Scalar value of subproblem `i`'s incumbent under the current ideal point.
    pub fn incumbent_value(&self, i: usize) -> f64 {
        let sp = &self.subproblems[i];
        self.value_under(&sp.incumbent.objectives, i)
    }

    fn value_under(&self, objectives: &ObjectiveVector, i: usize) -> f64 {
        chebyshev_unchecked(
            objectives.values(),
            self.subproblems[i].scalarizing_weight.components(),
            self.ideal.values(),
        )
    }

    /// Runs one generation.
    pub fn step(&mut self) -> Result<(), EngineError> {
        let offspring = self.breed()?;
        let genotypes: Vec<P::Genotype> = offspring.iter().map(|(_, g)| g.clone()).collect();
        let objectives = evaluate_all(self.problem, &genotypes, self.pool.as_ref())?;

        for obj in &objectives {
            self.ideal.update(obj)?;
        }
        for sp in &mut self.subproblems {
            sp.fitness_samples.clear();
        }
        for ((owner, genotype), obj) in offspring.into_iter().zip(objectives) {
            let own_value = self.value_under(&obj, owner);
            self.subproblems[owner].fitness_samples.push(own_value);
            self.offer(owner, genotype, obj);
        }

        let n = self.subproblems.len();
        let efforts = if self.config.adf_enabled {
            let variances: Vec<f64> =
                self.subproblems.iter().map(|sp| fitness_variance(&sp.fitness_samples)).collect();
            allocate_effort(&variances, self.config.per_generation_budget, self.config.effort_floor)?
        } else {
            equal_effort(n, self.config.per_generation_budget)
        };
        for (sp, e) in self.subproblems.iter_mut().zip(efforts) {
            sp.effort = e;
        }
        self.generation += 1;
        Ok(())
    }

    /// Breeds every subproblem's quota from the current incumbents.
    fn breed(&mut self) -> Result<Vec<(usize, P::Genotype)>, EngineError> {
        let mut out = Vec::with_capacity(self.config.per_generation_budget);
        for i in 0..self.subproblems.len() {
            for _ in 0..self.subproblems[i].effort {
                let (a, b) = self.pick_parents(i);
                let first = &self.subproblems[a].incumbent.genotype;
                let second = match b {
                    Some(b) => self.subproblems[b].incumbent.genotype.clone(),
                    None => self.problem.mutate(first, &mut self.rng).map_err(problem_err)?,
                };
                let first = &self.subproblems[a].incumbent.genotype;
                let child =
                    self.problem.crossover(first, &second, &mut self.rng).map_err(problem_err)?;
                let child = self.problem.mutate(&child, &mut self.rng).map_err(problem_err)?;
                out.push((i, child));
            }
        }
        Ok(out)
    }

    /// First parent uniform over the neighborhood; second uniform over the
    /// neighbors holding a different genotype, `None` when there is none.
    fn pick_parents(&mut self, i: usize) -> (usize, Option<usize>) {
        let neighbors = &self.subproblems[i].neighbors;
        let a = neighbors[self.rng.gen_range(0..neighbors.len())];
        let first = &self.subproblems[a].incumbent.genotype;
        let others: Vec<usize> = neighbors
            .iter()
            .copied()
            .filter(|&j| self.subproblems[j].incumbent.genotype != *first)
            .collect();
        if others.is_empty() {
            (a, None)
        } else {
            (a, Some(others[self.rng.gen_range(0..others.len())]))
        }
    }

    /// Replaces up to `replacement_cap` neighbors (ascending index) that the
    /// offspring strictly improves on.
    fn offer(&mut self, owner: usize, genotype: P::Genotype, objectives: ObjectiveVector) {
        let mut targets = self.subproblems[owner].neighbors.clone();
        targets.sort_unstable();
        let mut replaced = 0;
        for j in targets {
            if replaced >= self.config.replacement_cap {
                break;
            }
            if self.value_under(&objectives, j) < self.incumbent_value(j) {
                self.subproblems[j].incumbent =
                    Individual { genotype: genotype.clone(), objectives: objectives.clone() };
                replaced += 1;
            }
        }
    }

    /// Runs the remaining generations.
    pub fn run_to_end(&mut self) -> Result<(), EngineError> {
        while self.generation < self.config.generations {
            self.step()?;
        }
        Ok(())
    }

    pub fn incumbents(&self) -> Vec<Individual<P::Genotype>> {
        self.subproblems.iter().map(|sp| sp.incumbent.clone()).collect()
    }

    pub fn result(&self) -> RunResult<P::Genotype> {
        let incumbents = self.incumbents();
        let archive = pareto_filter(&incumbents);
        RunResult { incumbents, archive, ideal: self.ideal.clone() }
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            generation: self.generation,
            rng_seed: self.config.rng_seed,
            rng_word_pos: self.rng.get_word_pos(),
            ideal: self.ideal.values().to_vec(),
            records: self
                .subproblems
                .iter()
                .map(|sp| SnapshotRecord {
                    index: sp.index,
                    weight: sp.weight.components().to_vec(),
                    effort: sp.effort,
                    objectives: sp.incumbent.objectives.values().to_vec(),
                })
                .collect(),
        }
    }

    /// Position in the random stream, for determinism checks.
    pub fn rng_word_pos(&self) -> u128 {
        self.rng.get_word_pos()
    }
}

/// Evaluates the seeds, runs `config.generations` generations and returns
/// the incumbents with their Pareto filter.
pub fn run<P: Problem>(
    config: RunConfig,
    problem: &P,
    weights: Vec<WeightVector>,
    seeds: Vec<P::Genotype>,
) -> Result<RunResult<P::Genotype>, EngineError> {
    let mut opt = Optimizer::new(config, problem, weights, seeds)?;
    opt.run_to_end()?;
    Ok(opt.result())
}

fn problem_err<E: std::error::Error + Send + Sync + 'static>(e: E) -> EngineError {
    EngineError::Problem(Box::new(e))
}

fn build_pool(threads: usize) -> Result<Option<rayon::ThreadPool>, EngineError> {
    if threads <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| EngineError::Config(format!("cannot start thread pool: {e}")))
}

fn evaluate_all<P: Problem>(
    problem: &P,
    genotypes: &[P::Genotype],
    pool: Option<&rayon::ThreadPool>,
) -> Result<Vec<ObjectiveVector>, EngineError> {
    let eval = |g: &P::Genotype| -> Result<ObjectiveVector, EngineError> {
        let values = problem.evaluate(g).map_err(problem_err)?;
        if values.len() != problem.objective_count() {
            return Err(EngineError::DimensionMismatch {
                expected: problem.objective_count(),
                found: values.len(),
            });
        }
        ObjectiveVector::new(values)
    };
    match pool {
        Some(pool) => pool.install(|| genotypes.par_iter().map(eval).collect()),
        None => genotypes.iter().map(eval).collect(),
    }
}
