mod common;

use common::{library_splits, random_alignment, random_binary_tree};
use moead_adf::msa::AlignedMatrix;
use moead_adf::phylo::{
    bipartitions, fn_rate, neighbor_joining, parsimony_score, parsimony_score_rooted, DistanceMatrix, PhyloTree,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn splits_match_edge_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n = rng.gen_range(3..=20);
        let t = random_binary_tree(&mut rng, n, (0.1, 2.0));
        let lib = t.to_phylo();
        assert_eq!(library_splits(&lib), t.splits());
        assert_eq!(bipartitions(&lib).len(), n - 3);
    }
}

#[test]
fn nj_recovers_additive_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..60 {
        let n = rng.gen_range(5..=10);
        let t = random_binary_tree(&mut rng, n, (0.1, 2.0));
        let dm = DistanceMatrix::new(t.leaf_labels(), t.path_distances()).unwrap();
        let est = neighbor_joining(&dm).unwrap();
        assert_eq!(fn_rate(&t.to_phylo(), &est).unwrap(), 0.0);
    }
}

#[test]
fn fn_rate_matches_oracle_and_is_symmetric_on_binary_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(4..=12);
        let a = random_binary_tree(&mut rng, n, (0.1, 1.0));
        let b = random_binary_tree(&mut rng, n, (0.1, 1.0));
        let (sa, sb) = (a.splits(), b.splits());
        let want = sa.difference(&sb).count() as f64 / sa.len() as f64;
        let (ta, tb) = (a.to_phylo(), b.to_phylo());
        assert_eq!(fn_rate(&ta, &tb).unwrap(), want);
        assert_eq!(fn_rate(&ta, &tb).unwrap(), fn_rate(&tb, &ta).unwrap());
        assert_eq!(fn_rate(&ta, &ta).unwrap(), 0.0);
    }
}

/// Minimum number of state changes over all internal-state assignments,
/// with gap leaves free to match their neighbor.
fn brute_parsimony(tree: &common::EdgeTree, aln: &AlignedMatrix) -> u64 {
    let leaf_row = |v: usize| {
        tree.labels[v].as_ref().map(|l| aln.row_ids().iter().position(|id| id == l).unwrap())
    };
    let internal: Vec<usize> = (0..tree.labels.len()).filter(|&v| tree.labels[v].is_none()).collect();
    let mut total = 0;
    for c in 0..aln.width() {
        let mut states: Vec<u8> = aln.column(c).filter(|&s| s != b'-').collect();
        states.sort_unstable();
        states.dedup();
        if states.len() <= 1 {
            continue;
        }
        let mut assign = vec![0u8; tree.labels.len()];
        let mut best = u64::MAX;
        let combos = states.len().pow(internal.len() as u32);
        for mut code in 0..combos {
            for &v in &internal {
                assign[v] = states[code % states.len()];
                code /= states.len();
            }
            let state = |v: usize| match leaf_row(v) {
                Some(r) => aln.row(r)[c],
                None => assign[v],
            };
            let cost = tree
                .edges
                .iter()
                .filter(|&&(u, v, _)| {
                    let (a, b) = (state(u), state(v));
                    a != b'-' && b != b'-' && a != b
                })
                .count() as u64;
            best = best.min(cost);
        }
        total += best;
    }
    total
}

fn alignment_for(tree: &common::EdgeTree, rng: &mut ChaCha8Rng, cols: usize) -> AlignedMatrix {
    let ids = tree.leaf_labels();
    let alphabet = b"ACG";
    let rows = ids
        .iter()
        .map(|_| {
            let mut r: Vec<u8> = (0..cols)
                .map(|_| if rng.gen_bool(0.15) { b'-' } else { alphabet[rng.gen_range(0..3)] })
                .collect();
            r[0] = b'A';
            r
        })
        .collect();
    AlignedMatrix::new(ids, rows).unwrap()
}

#[test]
fn parsimony_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let n = rng.gen_range(3..=7);
        let t = random_binary_tree(&mut rng, n, (0.1, 1.0));
        let aln = alignment_for(&t, &mut rng, 12);
        assert_eq!(parsimony_score(&t.to_phylo(), &aln).unwrap(), brute_parsimony(&t, &aln));
    }
}

#[test]
fn parsimony_ignores_root_and_row_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(4..=15);
        let t = random_binary_tree(&mut rng, n, (0.1, 1.0));
        let aln = random_alignment(&mut rng, n, 30, 0.2);
        let relabel = |s: &str| format!("seq{}", s[1..].parse::<usize>().unwrap());
        let tree: PhyloTree = t.to_phylo().relabeled(relabel).unwrap();
        let base = parsimony_score(&tree, &aln).unwrap();
        for root in tree.internal_nodes() {
            assert_eq!(parsimony_score_rooted(&tree, &aln, root).unwrap(), base);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let permuted = AlignedMatrix::new(
            order.iter().map(|&i| aln.row_ids()[i].clone()).collect(),
            order.iter().map(|&i| aln.row(i).to_vec()).collect(),
        )
        .unwrap();
        assert_eq!(parsimony_score(&tree, &permuted).unwrap(), base);
    }
}
