//! Random instance generators and brute-force reference implementations
//! shared by the integration tests. Nothing here calls the code under test
//! except to build its input types.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use moead_adf::msa::{AlignedMatrix, BLOSUM62_TEXT};
use moead_adf::phylo::{PhyloTree, TreeBuilder};
use rand::seq::SliceRandom;
use rand::Rng;

pub const RESIDUES: &[u8] = b"ARNDCQEGHILKMFPSTWYV";

/// A random alignment. Every row keeps at least one residue; all-gap
/// columns are allowed.
pub fn random_alignment(rng: &mut impl Rng, rows: usize, cols: usize, gap_rate: f64) -> AlignedMatrix {
    let mut data: Vec<Vec<u8>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(gap_rate) { b'-' } else { RESIDUES[rng.gen_range(0..RESIDUES.len())] })
                .collect()
        })
        .collect();
    for row in &mut data {
        if row.iter().all(|&s| s == b'-') {
            let c = rng.gen_range(0..cols);
            row[c] = RESIDUES[rng.gen_range(0..RESIDUES.len())];
        }
    }
    let ids = (0..rows).map(|i| format!("seq{i}")).collect();
    AlignedMatrix::new(ids, data).unwrap()
}

/// Unrooted binary tree as a plain edge list. Leaves carry labels.
#[derive(Debug, Clone)]
pub struct EdgeTree {
    pub labels: Vec<Option<String>>,
    pub edges: Vec<(usize, usize, f64)>,
}

/// Grows a binary tree by repeatedly splitting a random edge with a new
/// leaf. Labels are shuffled so their order is unrelated to the shape.
pub fn random_binary_tree(rng: &mut impl Rng, leaves: usize, lengths: (f64, f64)) -> EdgeTree {
    let mut names: Vec<String> = (0..leaves).map(|i| format!("L{i:02}")).collect();
    names.shuffle(rng);
    let len = |rng: &mut dyn rand::RngCore| rng.gen_range(lengths.0..=lengths.1);
    let mut labels = vec![Some(names[0].clone()), Some(names[1].clone()), Some(names[2].clone()), None];
    let mut edges = vec![(0, 3, len(rng)), (1, 3, len(rng)), (2, 3, len(rng))];
    for name in names.iter().skip(3) {
        let e = rng.gen_range(0..edges.len());
        let (u, v, _) = edges.swap_remove(e);
        let w = labels.len();
        labels.push(None);
        let x = labels.len();
        labels.push(Some(name.clone()));
        edges.push((u, w, len(rng)));
        edges.push((w, v, len(rng)));
        edges.push((w, x, len(rng)));
    }
    EdgeTree { labels, edges }
}

impl EdgeTree {
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(u, v, l) in &self.edges {
            adj[u].push((v, l));
            adj[v].push((u, l));
        }
        adj
    }

    pub fn to_phylo(&self) -> PhyloTree {
        let mut b = TreeBuilder::new();
        for l in &self.labels {
            b.add_node(l.clone());
        }
        for &(u, v, l) in &self.edges {
            b.connect(u, v, Some(l));
        }
        b.finish().unwrap()
    }

    /// Leaf labels in node order.
    pub fn leaf_labels(&self) -> Vec<String> {
        self.labels.iter().flatten().cloned().collect()
    }

    /// Path-length distances between leaves, in [`Self::leaf_labels`] order.
    /// The upper triangle is mirrored so the matrix is exactly symmetric.
    #[allow(clippy::needless_range_loop)]
    pub fn path_distances(&self) -> Vec<Vec<f64>> {
        let adj = self.adjacency();
        let leaves: Vec<usize> = (0..self.labels.len()).filter(|&v| self.labels[v].is_some()).collect();
        let mut d: Vec<Vec<f64>> = leaves
            .iter()
            .map(|&s| {
                let mut dist = vec![f64::NAN; self.labels.len()];
                dist[s] = 0.0;
                let mut queue = VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for &(w, l) in &adj[v] {
                        if dist[w].is_nan() {
                            dist[w] = dist[v] + l;
                            queue.push_back(w);
                        }
                    }
                }
                leaves.iter().map(|&t| dist[t]).collect()
            })
            .collect();
        for i in 0..leaves.len() {
            for j in 0..i {
                d[i][j] = d[j][i];
            }
        }
        d
    }

    /// Non-trivial splits, each as the sorted side holding the smallest label.
    pub fn splits(&self) -> BTreeSet<Vec<String>> {
        let all: BTreeSet<String> = self.leaf_labels().into_iter().collect();
        let smallest = all.iter().next().unwrap().clone();
        let adj = self.adjacency();
        let mut out = BTreeSet::new();
        for &(u, v, _) in &self.edges {
            let mut seen = vec![false; self.labels.len()];
            seen[u] = true;
            seen[v] = true;
            let mut stack = vec![v];
            let mut side = BTreeSet::new();
            while let Some(x) = stack.pop() {
                if let Some(l) = &self.labels[x] {
                    side.insert(l.clone());
                }
                for &(y, _) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if side.len() < 2 || side.len() > all.len() - 2 {
                continue;
            }
            let side: BTreeSet<String> =
                if side.contains(&smallest) { side } else { all.difference(&side).cloned().collect() };
            out.insert(side.into_iter().collect());
        }
        out
    }

    /// Newick text rooted at `root`, written independently of the library.
    pub fn newick(&self, root: usize) -> String {
        let adj = self.adjacency();
        fn walk(t: &EdgeTree, adj: &[Vec<(usize, f64)>], v: usize, parent: Option<usize>, out: &mut String) {
            let kids: Vec<(usize, f64)> = adj[v].iter().copied().filter(|(w, _)| Some(*w) != parent).collect();
            if kids.is_empty() {
                out.push_str(t.labels[v].as_deref().unwrap());
                return;
            }
            out.push('(');
            if parent.is_none() {
                if let Some(l) = &t.labels[v] {
                    out.push_str(l);
                    out.push(',');
                }
            }
            for (i, (w, l)) in kids.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                walk(t, adj, *w, Some(v), out);
                out.push_str(&format!(":{l}"));
            }
            out.push(')');
        }
        let mut s = String::new();
        walk(self, &adj, root, None, &mut s);
        s.push(';');
        s
    }
}

/// Splits of a library tree in the oracle's representation.
pub fn library_splits(tree: &PhyloTree) -> BTreeSet<Vec<String>> {
    moead_adf::phylo::bipartitions(tree)
        .sides()
        .into_iter()
        .map(|(a, _)| a.into_iter().map(str::to_owned).collect())
        .collect()
}

/// Brute-force Pareto filter: indices not dominated by any other point.
pub fn brute_force_front(points: &[Vec<f64>]) -> Vec<usize> {
    let dominates = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y);
    (0..points.len())
        .filter(|&i| !(0..points.len()).any(|j| j != i && dominates(&points[j], &points[i])))
        .collect()
}

/// BLOSUM62 read straight from the table text.
pub fn blosum_lookup() -> HashMap<(u8, u8), i32> {
    let mut lines = BLOSUM62_TEXT.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<u8> = lines.next().unwrap().split_whitespace().map(|t| t.as_bytes()[0]).collect();
    let mut table = HashMap::new();
    for line in lines {
        let mut tok = line.split_whitespace();
        let a = tok.next().unwrap().as_bytes()[0];
        for (b, v) in header.iter().zip(tok) {
            table.insert((a, *b), v.parse().unwrap());
        }
    }
    table
}

pub struct Brute {
    pub simg: f64,
    pub simng: f64,
    pub sop: f64,
    pub gap: f64,
}

/// Per-column objective scores computed directly from their definitions.
pub fn brute_force(rows: &[Vec<u8>], table: &HashMap<(u8, u8), i32>) -> Brute {
    let n = rows.len();
    let width = rows[0].len();
    let mut out = Brute { simg: 0.0, simng: 0.0, sop: 0.0, gap: 0.0 };
    for c in 0..width {
        let col: Vec<u8> = rows.iter().map(|r| r[c]).collect();
        let mut best = 0;
        for &s in &col {
            if s != b'-' {
                best = best.max(col.iter().filter(|&&t| t == s).count());
            }
        }
        let ratio = best as f64 / n as f64;
        if col.contains(&b'-') {
            out.simg += ratio;
        } else {
            out.simng += ratio;
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (col[i], col[j]);
                if a == b'-' || b == b'-' || a == b'X' || b == b'X' {
                    continue;
                }
                out.sop += f64::from(table[&(a, b)]);
            }
        }
        out.gap -= col.iter().filter(|&&s| s == b'-').count() as f64;
    }
    out
}
