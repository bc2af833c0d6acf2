use super::{DistanceMatrix, PhyloError, PhyloTree, TreeBuilder};

/// Saitou-Nei neighbor joining.
///
/// Produces an unrooted binary tree. The pair minimizing the Q criterion is
/// joined at each step, ties going to the lowest index pair in the current
/// working order (a joined cluster takes the slot of its lower member).
/// Negative branch lengths are clamped to zero.
pub fn neighbor_joining(dm: &DistanceMatrix) -> Result<PhyloTree, PhyloError> {
    let n = dm.len();
    if n < 3 {
        return Err(PhyloError::TooFewLeaves(n));
    }
    let mut b = TreeBuilder::new();
    let mut nodes: Vec<usize> = dm.labels().iter().map(|l| b.add_node(Some(l.clone()))).collect();
    let mut d: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dm.get(i, j)).collect()).collect();

    while nodes.len() > 3 {
        let m = nodes.len();
        let r: Vec<f64> = d.iter().map(|row| row.iter().sum()).collect();
        let (mut bi, mut bj, mut best) = (0, 1, f64::INFINITY);
        for i in 0..m {
            for j in i + 1..m {
                let q = (m as f64 - 2.0) * d[i][j] - r[i] - r[j];
                if q < best {
                    (bi, bj, best) = (i, j, q);
                }
            }
        }
        let dij = d[bi][bj];
        let li = 0.5 * dij + (r[bi] - r[bj]) / (2.0 * (m as f64 - 2.0));
        let lj = dij - li;
        let u = b.add_node(None);
        b.connect(nodes[bi], u, Some(li.max(0.0)));
        b.connect(nodes[bj], u, Some(lj.max(0.0)));

        let du: Vec<f64> = (0..m).map(|k| 0.5 * (d[bi][k] + d[bj][k] - dij)).collect();
        for k in 0..m {
            d[bi][k] = du[k];
            d[k][bi] = du[k];
        }
        d[bi][bi] = 0.0;
        d.remove(bj);
        for row in &mut d {
            row.remove(bj);
        }
        nodes[bi] = u;
        nodes.remove(bj);
    }

    let c = b.add_node(None);
    for (a, x, y) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let len = 0.5 * (d[a][x] + d[a][y] - d[x][y]);
        b.connect(nodes[a], c, Some(len.max(0.0)));
    }
    b.finish()
}
