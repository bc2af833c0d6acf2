//! ZDT1, a two-objective continuous benchmark with a convex front at g = 1.

use rand::{Rng, RngCore};
use rand_distr::{Distribution, Normal};

use super::{EngineError, Problem};

/// Standard deviation of the Gaussian step applied by [`Zdt1::mutate`].
pub const MUTATION_SIGMA: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct Zdt1 {
    n_vars: usize,
}

impl Zdt1 {
    pub fn new(n_vars: usize) -> Result<Self, EngineError> {
        if n_vars < 2 {
            return Err(EngineError::Config(format!("ZDT1 needs at least 2 variables, got {n_vars}")));
        }
        Ok(Self { n_vars })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// `(f1, f2)` for a point, clamping coordinates into `[0, 1]` first.
    pub fn objectives(&self, x: &[f64]) -> [f64; 2] {
        let clamp = |v: f64| v.clamp(0.0, 1.0);
        let f1 = clamp(x[0]);
        let tail: f64 = x[1..].iter().map(|v| clamp(*v)).sum();
        let g = 1.0 + 9.0 * tail / (x.len() - 1) as f64;
        let f2 = g * (1.0 - (f1 / g).sqrt());
        [f1, f2]
    }
}

#[derive(Debug, thiserror::Error)]
#[error("genotype has {found} variables, ZDT1 instance expects {expected}")]
pub struct Zdt1Error {
    expected: usize,
    found: usize,
}

impl Problem for Zdt1 {
    type Genotype = Vec<f64>;
    type Error = Zdt1Error;

    fn objective_count(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &Vec<f64>) -> Result<Vec<f64>, Zdt1Error> {
        if x.len() != self.n_vars {
            return Err(Zdt1Error { expected: self.n_vars, found: x.len() });
        }
        Ok(self.objectives(x).to_vec())
    }

    /// Per-coordinate blend `alpha * a + (1 - alpha) * b`, alpha uniform in [0, 1].
    fn crossover(&self, a: &Vec<f64>, b: &Vec<f64>, rng: &mut dyn RngCore) -> Result<Vec<f64>, Zdt1Error> {
        Ok(a.iter()
            .zip(b)
            .map(|(x, y)| {
                let alpha: f64 = rng.gen();
                (alpha * x + (1.0 - alpha) * y).clamp(0.0, 1.0)
            })
            .collect())
    }

    /// Each coordinate moves by N(0, sigma^2) with probability 1/n, then is clamped.
    fn mutate(&self, x: &Vec<f64>, rng: &mut dyn RngCore) -> Result<Vec<f64>, Zdt1Error> {
        let step = Normal::new(0.0, MUTATION_SIGMA).expect("positive sigma");
        let rate = 1.0 / self.n_vars as f64;
        Ok(x.iter()
            .map(|v| {
                if rng.gen::<f64>() < rate {
                    (v + step.sample(rng)).clamp(0.0, 1.0)
                } else {
                    *v
                }
            })
            .collect())
    }

    fn seed(&self, count: usize, rng: &mut dyn RngCore) -> Result<Vec<Vec<f64>>, Zdt1Error> {
        Ok((0..count).map(|_| (0..self.n_vars).map(|_| rng.gen::<f64>()).collect()).collect())
    }
}
