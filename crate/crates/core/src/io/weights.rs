use rand::{Rng, RngCore};

use super::{at_line, IoError};
use crate::decomp::WeightVector;

/// Parses one weight vector per line, comma- or whitespace-separated, with
/// `#` comments. Rows are scaled to sum to one; rows that already do are
/// kept exactly.
pub fn parse_weights(text: &str, m: usize) -> Result<Vec<WeightVector>, IoError> {
    let mut out: Vec<WeightVector> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let values: Vec<f64> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|_| at_line(lineno, format!("`{t}` is not a number"))))
            .collect::<Result<_, _>>()?;
        if values.len() != m {
            return Err(at_line(lineno, format!("expected {m} weights, found {}", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(at_line(lineno, format!("weight {v} is negative or not finite")));
        }
        let sum: f64 = values.iter().sum();
        if sum == 0.0 {
            return Err(at_line(lineno, "all-zero weight row"));
        }
        let w = if (sum - 1.0).abs() <= 1e-9 {
            WeightVector::new(values)
        } else {
            WeightVector::normalized(values)
        }
        .map_err(|e| at_line(lineno, e.to_string()))?;
        if out.contains(&w) {
            return Err(at_line(lineno, "duplicate weight row"));
        }
        out.push(w);
    }
    if out.is_empty() {
        return Err(at_line(1, "no weight rows"));
    }
    Ok(out)
}

/// One space-separated row per vector.
pub fn write_weights(weights: &[WeightVector]) -> String {
    let mut out = String::new();
    for w in weights {
        let row: Vec<String> = w.components().iter().map(f64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Number of points in the simplex lattice with `m` parts and resolution `h`.
pub fn lattice_size(m: usize, h: usize) -> usize {
    // C(h + m - 1, m - 1), built up so intermediate values stay exact.
    (1..m).fold(1usize, |acc, i| acc * (h + i) / i)
}

fn compositions(m: usize, h: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![h]];
    }
    let mut out = Vec::new();
    for first in (0..=h).rev() {
        for mut rest in compositions(m - 1, h - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `count` well-spread weight vectors in dimension `m`.
///
/// Takes the smallest simplex lattice with at least `count` points, keeps
/// the `m` unit vectors, then repeatedly adds the lattice point farthest
/// (by minimum Euclidean distance) from those already chosen. Ties are
/// broken uniformly with `rng`.
pub fn generate_weights(m: usize, count: usize, rng: &mut dyn RngCore) -> Result<Vec<WeightVector>, IoError> {
    if m < 2 {
        return Err(IoError::Config(format!("weight dimension must be at least 2, got {m}")));
    }
    if count < m {
        return Err(IoError::Config(format!("need at least {m} weight vectors for {m} objectives, got {count}")));
    }
    let mut h = 1;
    while lattice_size(m, h) < count {
        h += 1;
    }
    let points: Vec<Vec<f64>> = compositions(m, h)
        .into_iter()
        .map(|c| c.into_iter().map(|k| k as f64 / h as f64).collect())
        .collect();
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();

    let is_unit = |p: &[f64]| p.iter().filter(|&&x| x == 1.0).count() == 1;
    let mut chosen: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut pool: Vec<Vec<f64>> = points.into_iter().filter(|p| !is_unit(p)).collect();
    let mut nearest: Vec<f64> =
        pool.iter().map(|p| chosen.iter().map(|c| dist(p, c)).fold(f64::INFINITY, f64::min)).collect();
    while chosen.len() < count {
        let best = nearest.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let tied: Vec<usize> = (0..pool.len()).filter(|&i| nearest[i] >= best - 1e-12).collect();
        let pick = tied[rng.gen_range(0..tied.len())];
        let p = pool.swap_remove(pick);
        nearest.swap_remove(pick);
        for (q, n) in pool.iter().zip(nearest.iter_mut()) {
            *n = n.min(dist(q, &p));
        }
        chosen.push(p);
    }
    chosen
        .into_iter()
        .map(|w| WeightVector::new(w).map_err(|e| IoError::Config(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_rows() {
        let w = parse_weights("1 0 0 0 0\n# note\n0 1 0 0 0  # trailing\n", 5).unwrap();
        assert_eq!(w.len(), 2);
        let w = parse_weights("0.2,0.2,0.2,0.2,0.2", 5).unwrap();
        assert_eq!(w[0].components(), [0.2; 5]);
        let w = parse_weights("0.5 0.5 0.5 0.5 0.5", 5).unwrap();
        assert_eq!(w[0].components(), [0.2; 5]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert_eq!(parse_weights("1 0\n1 0 0", 2).unwrap_err(), at_line(2, "expected 2 weights, found 3"));
        assert!(matches!(parse_weights("0.5 -0.5", 2), Err(IoError::Line { line: 1, .. })));
        assert!(matches!(parse_weights("\n0 0", 2), Err(IoError::Line { line: 2, .. })));
        assert!(matches!(parse_weights("1 0\n2 0", 2), Err(IoError::Line { line: 2, .. })));
        assert!(matches!(parse_weights("a b", 2), Err(IoError::Line { line: 1, .. })));
    }

    #[test]
    fn write_parse_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = generate_weights(5, 30, &mut rng).unwrap();
        assert_eq!(parse_weights(&write_weights(&w), 5).unwrap(), w);
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(lattice_size(2, 2), 3);
        assert_eq!(lattice_size(5, 3), 35);
        assert_eq!(lattice_size(5, 2), 15);
        assert_eq!(compositions(5, 3).len(), 35);
    }

    #[test]
    fn generated_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let w = generate_weights(2, 3, &mut rng).unwrap();
        let got: Vec<&[f64]> = w.iter().map(|v| v.components()).collect();
        assert_eq!(got, vec![&[1.0, 0.0][..], &[0.0, 1.0], &[0.5, 0.5]]);

        let w = generate_weights(5, 5, &mut rng).unwrap();
        for (i, v) in w.iter().enumerate() {
            assert_eq!(v.components()[i], 1.0);
        }

        let w = generate_weights(5, 30, &mut rng).unwrap();
        assert_eq!(w.len(), 30);
        for (i, a) in w.iter().enumerate() {
            for b in &w[i + 1..] {
                assert_ne!(a, b);
            }
            for c in a.components() {
                assert!((c * 3.0 - (c * 3.0).round()).abs() < 1e-12);
            }
        }
        assert!(generate_weights(5, 4, &mut rng).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_weights(4, 12, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = generate_weights(4, 12, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }
}
