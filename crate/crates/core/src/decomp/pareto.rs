use std::cmp::Ordering;

use super::types::dominates;
use super::Individual;

/// Indices of the points no other point dominates, in input order.
///
/// Points are visited in lexicographic order, so anything that could
/// dominate a point has already been seen; each point is only checked
/// against the current front. Identical vectors never dominate each other
/// and are all kept.
pub fn non_dominated_indices<V: AsRef<[f64]>>(points: &[V]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lexicographic(points[a].as_ref(), points[b].as_ref()).then(a.cmp(&b)));

    let mut front: Vec<usize> = Vec::new();
    for i in order {
        let p = points[i].as_ref();
        if !front.iter().any(|&j| dominates(points[j].as_ref(), p)) {
            front.push(i);
        }
    }
    front.sort_unstable();
    front
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// The non-dominated subset of `individuals` (minimization).
pub fn pareto_filter<G: Clone>(individuals: &[Individual<G>]) -> Vec<Individual<G>> {
    let points: Vec<&[f64]> = individuals.iter().map(|ind| ind.objectives.values()).collect();
    non_dominated_indices(&points).into_iter().map(|i| individuals[i].clone()).collect()
}
