//! Weighted Chebyshev scalarization and ideal-point tracking.

use super::types::check_dims;
use super::{EngineError, IdealPoint, ObjectiveVector, WeightVector};

/// `max_i w_i * |f_i - z*_i|`.
///
/// The weight is used as given; callers that want zero components guarded
/// pass `weight.floored()`. The engine always does.
pub fn chebyshev(
    objectives: &ObjectiveVector,
    weight: &WeightVector,
    ideal: &IdealPoint,
) -> Result<f64, EngineError> {
    check_dims(weight.len(), objectives.len())?;
    check_dims(weight.len(), ideal.values().len())?;
    Ok(chebyshev_unchecked(objectives.values(), weight.components(), ideal.values()))
}

pub(crate) fn chebyshev_unchecked(f: &[f64], w: &[f64], z: &[f64]) -> f64 {
    f.iter()
        .zip(w)
        .zip(z)
        .map(|((fi, wi), zi)| wi * (fi - zi).abs())
        .fold(0.0, f64::max)
}

/// Componentwise minimum of the current ideal point and an observation.
pub fn update_ideal(
    ideal: &IdealPoint,
    observed: &ObjectiveVector,
) -> Result<IdealPoint, EngineError> {
    let mut next = ideal.clone();
    next.update(observed)?;
    Ok(next)
}
