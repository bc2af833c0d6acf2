use super::{leaf_mismatch, PhyloError, PhyloTree};
use crate::msa::{AlignedMatrix, GAP};

const ANY: u32 = (1 << 27) - 1;

fn state(symbol: u8) -> u32 {
    match symbol.to_ascii_uppercase() {
        GAP => ANY,
        b'*' => 1 << 26,
        c @ b'A'..=b'Z' => 1 << (c - b'A'),
        _ => ANY,
    }
}

/// Fitch small-parsimony score summed over columns. Gaps are missing data.
pub fn parsimony_score(tree: &PhyloTree, aln: &AlignedMatrix) -> Result<u64, PhyloError> {
    let root = tree.internal_nodes().next().expect("a valid tree has an internal node");
    parsimony_score_rooted(tree, aln, root)
}

/// [`parsimony_score`] with the tree rooted at node `root`. Multifurcations
/// use Hartigan's generalization; the result does not depend on `root`.
pub fn parsimony_score_rooted(
    tree: &PhyloTree,
    aln: &AlignedMatrix,
    root: usize,
) -> Result<u64, PhyloError> {
    let mut ids: Vec<String> = aln.row_ids().to_vec();
    ids.sort();
    if let Some(err) = leaf_mismatch(&tree.leaf_labels(), &ids) {
        return Err(err);
    }
    let row_of: Vec<Option<usize>> = (0..tree.node_count())
        .map(|v| {
            if !tree.is_leaf(v) {
                return None;
            }
            let label = tree.label(v).unwrap();
            aln.row_ids().iter().position(|id| id == label)
        })
        .collect();
    let order = tree.preorder(root);
    let mut sets = vec![0u32; tree.node_count()];
    let mut counts = [0u32; 27];
    let mut total = 0u64;
    for col in 0..aln.width() {
        for &(v, parent) in order.iter().rev() {
            if let Some(r) = row_of[v] {
                sets[v] = state(aln.row(r)[col]);
                continue;
            }
            counts.fill(0);
            let mut children = 0;
            for &(c, _) in tree.neighbors(v) {
                if Some(c) == parent {
                    continue;
                }
                children += 1;
                let mut s = sets[c];
                while s != 0 {
                    counts[s.trailing_zeros() as usize] += 1;
                    s &= s - 1;
                }
            }
            let best = *counts.iter().max().unwrap();
            sets[v] = counts.iter().enumerate().filter(|(_, &c)| c == best).fold(0, |m, (i, _)| m | 1 << i);
            total += u64::from(children - best);
        }
    }
    Ok(total)
}
