use super::PhyloError;
use crate::msa::{AlignedMatrix, GAP};

/// Symmetric distances with a zero diagonal, indexed like `labels`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// `rows[i][j]` is the distance between `labels[i]` and `labels[j]`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, PhyloError> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(PhyloError::InvalidDistance(format!("expected a {n}x{n} matrix")));
        }
        for i in 0..n {
            if rows[i][i] != 0.0 {
                return Err(PhyloError::InvalidDistance(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let v = rows[i][j];
                if !v.is_finite() || v < 0.0 {
                    return Err(PhyloError::InvalidDistance(format!("entry ({i}, {j}) = {v}")));
                }
                if v != rows[j][i] {
                    return Err(PhyloError::InvalidDistance(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { labels, d: rows.concat() })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.labels.len() + j]
    }
}

/// p-distance: mismatches over columns where both rows hold residues,
/// or 1.0 when no column is comparable.
#[allow(clippy::needless_range_loop)]
pub fn pairwise_distance(aln: &AlignedMatrix) -> Result<DistanceMatrix, PhyloError> {
    let n = aln.num_rows();
    if n < 3 {
        return Err(PhyloError::TooFewLeaves(n));
    }
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (mut comparable, mut mismatches) = (0usize, 0usize);
            for (&a, &b) in aln.row(i).iter().zip(aln.row(j)) {
                if a != GAP && b != GAP {
                    comparable += 1;
                    mismatches += usize::from(a != b);
                }
            }
            let d = if comparable == 0 { 1.0 } else { mismatches as f64 / comparable as f64 };
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    DistanceMatrix::new(aln.row_ids().to_vec(), rows)
}
