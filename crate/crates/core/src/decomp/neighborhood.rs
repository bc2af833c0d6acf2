use super::{EngineError, WeightVector};

/// For every weight vector, the `k` closest weight vectors by Euclidean
/// distance (itself first), ties broken by lower index.
pub fn build_neighborhoods(
    weights: &[WeightVector],
    k: usize,
) -> Result<Vec<Vec<usize>>, EngineError> {
    let n = weights.len();
    if k < 2 || k > n {
        return Err(EngineError::Config(format!(
            "neighborhood size {k} outside [2, {n}]"
        )));
    }
    let neighborhoods = weights
        .iter()
        .map(|wi| {
            let mut order: Vec<(f64, usize)> =
                weights.iter().enumerate().map(|(j, wj)| (wi.distance(wj), j)).collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.into_iter().take(k).map(|(_, j)| j).collect()
        })
        .collect();
    Ok(neighborhoods)
}
