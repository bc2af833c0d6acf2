use std::fmt;

use super::EngineError;

/// Smallest weight component allowed after flooring.
pub const WEIGHT_EPSILON: f64 = 1e-6;

/// Objective values in minimization orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    /// Builds a vector of at least two finite values.
    pub fn new(values: Vec<f64>) -> Result<Self, EngineError> {
        if values.len() < 2 {
            return Err(EngineError::Config(format!(
                "objective vectors need at least 2 entries, got {}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(EngineError::NonFinite { position: pos, value: values[pos] });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `true` when `self` is no worse everywhere and strictly better somewhere.
    pub fn dominates(&self, other: &ObjectiveVector) -> bool {
        dominates(&self.0, &other.0)
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

pub(crate) fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

fn write_joined(f: &mut fmt::Formatter<'_>, values: &[f64]) -> fmt::Result {
    f.write_str("(")?;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

/// A point on the unit simplex that defines one scalar subproblem.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Accepts non-negative components summing to one (within 1e-9).
    pub fn new(weights: Vec<f64>) -> Result<Self, EngineError> {
        if weights.len() < 2 {
            return Err(EngineError::Config(format!(
                "weight vectors need at least 2 components, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(EngineError::Config(format!(
                "weight components must be finite and non-negative: {weights:?}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(EngineError::Config(format!("weights sum to {sum}, expected 1")));
        }
        Ok(Self(weights))
    }

    /// Scales non-negative components so they sum to one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self, EngineError> {
        let sum: f64 = weights.iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            return Err(EngineError::Config(format!("cannot normalize weights {weights:?}")));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Replaces zero components with [`WEIGHT_EPSILON`] and renormalizes.
    /// Vectors with no zero component come back unchanged.
    pub fn floored(&self) -> WeightVector {
        if self.0.iter().all(|w| *w > 0.0) {
            return self.clone();
        }
        let raised: Vec<f64> =
            self.0.iter().map(|w| if *w == 0.0 { WEIGHT_EPSILON } else { *w }).collect();
        let sum: f64 = raised.iter().sum();
        WeightVector(raised.into_iter().map(|w| w / sum).collect())
    }

    pub fn distance(&self, other: &WeightVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

/// Running componentwise minimum of every objective vector observed.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoint(Vec<f64>);

impl IdealPoint {
    pub fn new(z: Vec<f64>) -> Self {
        Self(z)
    }

    /// Starts from the componentwise minimum of `points`.
    pub fn from_points<'a, I>(points: I) -> Result<Self, EngineError>
    where
        I: IntoIterator<Item = &'a ObjectiveVector>,
    {
        let mut iter = points.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| EngineError::Config("ideal point needs at least one point".into()))?;
        let mut ideal = IdealPoint(first.values().to_vec());
        for p in iter {
            ideal.update(p)?;
        }
        Ok(ideal)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Lowers each component to the observed value where it improves.
    pub fn update(&mut self, observed: &ObjectiveVector) -> Result<(), EngineError> {
        check_dims(self.0.len(), observed.len())?;
        for (z, f) in self.0.iter_mut().zip(observed.values()) {
            if *f < *z {
                *z = *f;
            }
        }
        Ok(())
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<(), EngineError> {
    if expected == found {
        Ok(())
    } else {
        Err(EngineError::DimensionMismatch { expected, found })
    }
}
