//! Variance-driven offspring quotas.
//!
//! Each generation a subproblem's scalar fitness samples are reduced to a
//! population variance, and the per-generation offspring budget is split in
//! proportion to those variances. Subproblems whose landscape looked more
//! dispersed get more offspring next time; every subproblem keeps at least
//! `floor`.

use super::EngineError;

/// Population variance (mean squared deviation). Empty and single-sample
/// inputs give 0.
pub fn fitness_variance(samples: &[f64]) -> f64 {
    if samples.len() < 2 {
        return 0.0;
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n
}

/// Splits `budget` into one integer quota per variance.
///
/// Shares are proportional to variance. Any entry whose share would fall
/// below `floor` is pinned to `floor` and the remaining budget is re-shared
/// among the others. Fractional parts are resolved by largest remainder,
/// lower index first on ties. All-zero variances give an equal split.
pub fn allocate_effort(
    variances: &[f64],
    budget: usize,
    floor: usize,
) -> Result<Vec<usize>, EngineError> {
    let n = variances.len();
    if n == 0 {
        return Err(EngineError::Config("no subproblems to allocate effort to".into()));
    }
    if floor == 0 {
        return Err(EngineError::Config("effort floor must be at least 1".into()));
    }
    if budget < n * floor {
        return Err(EngineError::Config(format!(
            "budget {budget} is below {n} subproblems x floor {floor}"
        )));
    }
    if let Some(v) = variances.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(EngineError::Config(format!("invalid variance {v}")));
    }

    let mut pinned = vec![false; n];
    let mut shares = vec![0.0; n];
    loop {
        let free_budget = (budget - floor * pinned.iter().filter(|p| **p).count()) as f64;
        let free: Vec<usize> = (0..n).filter(|&i| !pinned[i]).collect();
        let total: f64 = free.iter().map(|&i| variances[i]).sum();
        for &i in &free {
            shares[i] = if total > 0.0 {
                free_budget * variances[i] / total
            } else {
                free_budget / free.len() as f64
            };
        }
        let mut changed = false;
        for &i in &free {
            if shares[i] < floor as f64 {
                pinned[i] = true;
                shares[i] = floor as f64;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut alloc: Vec<usize> = shares.iter().map(|s| s.floor() as usize).collect();
    for (a, p) in alloc.iter_mut().zip(&pinned) {
        if *p {
            *a = floor;
        }
    }
    let assigned: usize = alloc.iter().sum();
    let mut leftover = budget.saturating_sub(assigned);
    let mut order: Vec<usize> = (0..n).filter(|&i| !pinned[i]).collect();
    order.sort_by(|&a, &b| {
        let ra = shares[a] - shares[a].floor();
        let rb = shares[b] - shares[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if leftover == 0 {
            break;
        }
        alloc[i] += 1;
        leftover -= 1;
    }
    debug_assert_eq!(alloc.iter().sum::<usize>(), budget);
    Ok(alloc)
}

/// Equal split with the remainder going to the lowest indices.
pub fn equal_effort(n: usize, budget: usize) -> Vec<usize> {
    let base = budget / n;
    let extra = budget % n;
    (0..n).map(|i| base + usize::from(i < extra)).collect()
}
