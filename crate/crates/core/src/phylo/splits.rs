use std::collections::BTreeSet;

use super::{leaf_mismatch, PhyloError, PhyloTree};

/// One split as a bitmask over the sorted leaf labels. The stored side is
/// the one containing the smallest label.
pub type Bipartition = Vec<u64>;

/// Non-trivial splits of a tree over a fixed sorted label list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionSet {
    labels: Vec<String>,
    splits: BTreeSet<Bipartition>,
}

impl BipartitionSet {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn splits(&self) -> &BTreeSet<Bipartition> {
        &self.splits
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    /// Whether some split separates exactly `side` from the other leaves.
    pub fn contains_labels(&self, side: &[&str]) -> bool {
        let mut mask = vec![0u64; words(self.labels.len())];
        for l in side {
            match self.labels.binary_search_by(|x| x.as_str().cmp(l)) {
                Ok(i) => mask[i / 64] |= 1 << (i % 64),
                Err(_) => return false,
            }
        }
        if mask[0] & 1 == 0 {
            complement(&mut mask, self.labels.len());
        }
        self.splits.contains(&mask)
    }

    /// Each split as its two sides of labels, smallest-label side first.
    pub fn sides(&self) -> Vec<(Vec<&str>, Vec<&str>)> {
        self.splits
            .iter()
            .map(|m| {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                for (i, l) in self.labels.iter().enumerate() {
                    if m[i / 64] >> (i % 64) & 1 == 1 { a.push(l.as_str()) } else { b.push(l.as_str()) }
                }
                (a, b)
            })
            .collect()
    }
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn complement(mask: &mut [u64], n: usize) {
    for (w, word) in mask.iter_mut().enumerate() {
        let bits = (n - w * 64).min(64);
        let valid = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        *word = !*word & valid;
    }
}

/// Splits induced by the internal edges of `tree`.
pub fn bipartitions(tree: &PhyloTree) -> BipartitionSet {
    let labels = tree.leaf_labels();
    let n = labels.len();
    let w = words(n);
    let root = tree.leaf_node(&labels[0]).expect("smallest label is a leaf");
    let order = tree.preorder(root);
    let mut masks = vec![vec![0u64; w]; tree.node_count()];
    let mut sizes = vec![0usize; tree.node_count()];
    let mut splits = BTreeSet::new();
    for &(v, parent) in order.iter().rev() {
        if tree.is_leaf(v) && v != root {
            let i = labels.binary_search_by(|x| x.as_str().cmp(tree.label(v).unwrap())).unwrap();
            masks[v][i / 64] |= 1 << (i % 64);
            sizes[v] = 1;
        } else if sizes[v] >= 2 && sizes[v] <= n - 2 {
            let mut m = masks[v].clone();
            complement(&mut m, n);
            splits.insert(m);
        }
        if let Some(p) = parent {
            let child = std::mem::take(&mut masks[v]);
            for (a, b) in masks[p].iter_mut().zip(&child) {
                *a |= b;
            }
            sizes[p] += sizes[v];
        }
    }
    BipartitionSet { labels, splits }
}

/// Fraction of the true tree's splits missing from the estimate; 0 when
/// the true tree has none.
pub fn fn_rate(true_tree: &PhyloTree, est_tree: &PhyloTree) -> Result<f64, PhyloError> {
    let t = bipartitions(true_tree);
    let e = bipartitions(est_tree);
    if let Some(err) = leaf_mismatch(&t.labels, &e.labels) {
        return Err(err);
    }
    if t.is_empty() {
        return Ok(0.0);
    }
    let missing = t.splits.difference(&e.splits).count();
    Ok(missing as f64 / t.len() as f64)
}
