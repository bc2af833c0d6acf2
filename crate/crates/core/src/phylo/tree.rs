use std::collections::{BTreeSet, HashSet};

use super::PhyloError;

#[derive(Debug, Clone, PartialEq)]
struct Node {
    label: Option<String>,
    edges: Vec<(usize, Option<f64>)>,
}

/// Unrooted tree with labeled leaves and optional branch lengths.
///
/// Every leaf has degree 1 and a unique label; internal nodes have degree
/// at least 3. Internal labels are kept but play no part in comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyloTree {
    nodes: Vec<Node>,
}

/// Mutable tree under construction. [`TreeBuilder::finish`] suppresses
/// degree-2 nodes and validates.
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    nodes: Vec<Node>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: Option<String>) -> usize {
        self.nodes.push(Node { label, edges: Vec::new() });
        self.nodes.len() - 1
    }

    pub fn connect(&mut self, a: usize, b: usize, length: Option<f64>) {
        self.nodes[a].edges.push((b, length));
        self.nodes[b].edges.push((a, length));
    }

    pub fn finish(mut self) -> Result<PhyloTree, PhyloError> {
        // Splice out unlabeled or internal degree-2 nodes, summing lengths.
        while let Some(v) = (0..self.nodes.len()).find(|&v| self.nodes[v].edges.len() == 2) {
            let (a, la) = self.nodes[v].edges[0];
            let (b, lb) = self.nodes[v].edges[1];
            let length = match (la, lb) {
                (None, None) => None,
                (x, y) => Some(x.unwrap_or(0.0) + y.unwrap_or(0.0)),
            };
            self.nodes[a].edges.retain(|(n, _)| *n != v);
            self.nodes[b].edges.retain(|(n, _)| *n != v);
            self.nodes[v].edges.clear();
            self.nodes[v].label = None;
            self.connect(a, b, length);
        }
        // Drop the isolated nodes left behind and renumber.
        let keep: Vec<usize> =
            (0..self.nodes.len()).filter(|&v| !self.nodes[v].edges.is_empty()).collect();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let nodes: Vec<Node> = keep
            .iter()
            .map(|&old| {
                let n = &self.nodes[old];
                Node {
                    label: n.label.clone(),
                    edges: n.edges.iter().map(|&(t, l)| (remap[t], l)).collect(),
                }
            })
            .collect();
        let tree = PhyloTree { nodes };
        tree.validate()?;
        Ok(tree)
    }
}

impl PhyloTree {
    fn validate(&self) -> Result<(), PhyloError> {
        let n = self.nodes.len();
        let mut seen = HashSet::new();
        let mut leaves = 0;
        let mut edge_ends = 0;
        for node in &self.nodes {
            edge_ends += node.edges.len();
            if let Some(l) = &node.length_check() {
                return Err(PhyloError::InvalidTree(l.clone()));
            }
            match node.edges.len() {
                1 => {
                    leaves += 1;
                    let label = node
                        .label
                        .as_deref()
                        .ok_or_else(|| PhyloError::InvalidTree("unlabeled leaf".into()))?;
                    if !seen.insert(label) {
                        return Err(PhyloError::InvalidTree(format!("duplicate leaf `{label}`")));
                    }
                }
                2 => return Err(PhyloError::InvalidTree("degree-2 internal node".into())),
                _ => {}
            }
        }
        if leaves < 3 {
            return Err(PhyloError::TooFewLeaves(leaves));
        }
        if edge_ends / 2 != n - 1 {
            return Err(PhyloError::InvalidTree("graph is not a tree".into()));
        }
        let mut stack = vec![0];
        let mut visited = vec![false; n];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.nodes[v].edges {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(PhyloError::InvalidTree("graph is not connected".into()));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].edges.len() == 1
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.nodes[v].label.as_deref()
    }

    /// Neighbors of `v` with the length of the connecting edge.
    pub fn neighbors(&self, v: usize) -> &[(usize, Option<f64>)] {
        &self.nodes[v].edges
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&v| self.is_leaf(v))
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&v| !self.is_leaf(v))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Leaf labels in sorted order.
    pub fn leaf_labels(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.leaves().filter_map(|v| self.label(v)).collect();
        set.into_iter().map(str::to_owned).collect()
    }

    pub fn leaf_node(&self, label: &str) -> Option<usize> {
        self.leaves().find(|&v| self.label(v) == Some(label))
    }

    /// Each edge once, as `(u, v, length)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, Option<f64>)> {
        let mut out = Vec::new();
        for (u, node) in self.nodes.iter().enumerate() {
            for &(v, l) in &node.edges {
                if u < v {
                    out.push((u, v, l));
                }
            }
        }
        out
    }

    /// Nodes in depth-first preorder from `root`, with each node's parent.
    pub fn preorder(&self, root: usize) -> Vec<(usize, Option<usize>)> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(root, None)];
        while let Some((v, parent)) = stack.pop() {
            order.push((v, parent));
            for &(w, _) in self.nodes[v].edges.iter().rev() {
                if Some(w) != parent {
                    stack.push((w, Some(v)));
                }
            }
        }
        order
    }

    /// The same tree with every leaf label mapped through `f`.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> Result<PhyloTree, PhyloError> {
        let mut tree = self.clone();
        for v in 0..tree.nodes.len() {
            if tree.nodes[v].edges.len() == 1 {
                if let Some(l) = &tree.nodes[v].label {
                    tree.nodes[v].label = Some(f(l));
                }
            }
        }
        tree.validate()?;
        Ok(tree)
    }
}

impl Node {
    fn length_check(&self) -> Option<String> {
        self.edges
            .iter()
            .filter_map(|(_, l)| *l)
            .find(|l| !l.is_finite() || *l < 0.0)
            .map(|l| format!("invalid branch length {l}"))
    }
}
