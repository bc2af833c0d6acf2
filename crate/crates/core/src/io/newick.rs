use std::collections::HashMap;

use super::IoError;
use crate::phylo::{PhyloError, PhyloTree, TreeBuilder};

fn err(offset: usize, message: impl Into<String>) -> IoError {
    IoError::Offset { offset, message: message.into() }
}

struct Parsed {
    label: Option<String>,
    parent: Option<usize>,
    length: Option<f64>,
    internal: bool,
}

/// Parses one Newick tree.
///
/// Accepts branch lengths, internal labels, single-quoted labels (with `''`
/// for a literal quote) and bracketed comments. The outermost node's
/// length is ignored and degree-2 nodes are suppressed. Errors carry the
/// byte offset where parsing failed.
pub fn parse_newick(text: &str) -> Result<PhyloTree, IoError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut nodes: Vec<Parsed> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut last: Option<usize> = None;
    let mut leaves: HashMap<String, usize> = HashMap::new();

    loop {
        skip_blank(bytes, &mut pos)?;
        let Some(&c) = bytes.get(pos) else {
            return Err(err(pos, "missing ';'"));
        };
        match c {
            b'(' => {
                if last.is_some() {
                    return Err(err(pos, "unexpected '('"));
                }
                nodes.push(Parsed { label: None, parent: stack.last().copied(), length: None, internal: true });
                stack.push(nodes.len() - 1);
                pos += 1;
            }
            b',' => {
                if stack.is_empty() {
                    return Err(err(pos, "',' outside parentheses"));
                }
                if last.take().is_none() {
                    return Err(err(pos, "empty subtree"));
                }
                pos += 1;
            }
            b')' => {
                if last.is_none() {
                    return Err(err(pos, "empty subtree"));
                }
                let Some(u) = stack.pop() else {
                    return Err(err(pos, "unbalanced ')'"));
                };
                last = Some(u);
                pos += 1;
            }
            b':' => {
                let Some(u) = last else {
                    return Err(err(pos, "branch length without a node"));
                };
                if nodes[u].length.is_some() {
                    return Err(err(pos, "second branch length"));
                }
                pos += 1;
                skip_blank(bytes, &mut pos)?;
                let start = pos;
                while pos < bytes.len() && matches!(bytes[pos], b'0'..=b'9' | b'.' | b'-' | b'+' | b'e' | b'E') {
                    pos += 1;
                }
                let v: f64 = text[start..pos]
                    .parse()
                    .map_err(|_| err(start, format!("bad branch length `{}`", &text[start..pos])))?;
                if !v.is_finite() || v < 0.0 {
                    return Err(err(start, format!("branch length {v} is negative or not finite")));
                }
                nodes[u].length = Some(v);
            }
            b';' => {
                if !stack.is_empty() {
                    return Err(err(pos, "unbalanced '('"));
                }
                if last.is_none() {
                    return Err(err(pos, "empty tree"));
                }
                pos += 1;
                skip_blank(bytes, &mut pos)?;
                if pos < bytes.len() {
                    return Err(err(pos, "text after ';'"));
                }
                break;
            }
            _ => {
                let start = pos;
                let label = read_label(text, &mut pos)?;
                match last {
                    Some(u) if nodes[u].internal && nodes[u].label.is_none() && nodes[u].length.is_none() => {
                        nodes[u].label = Some(label);
                    }
                    Some(_) => return Err(err(start, "unexpected label")),
                    None => {
                        if stack.is_empty() && !nodes.is_empty() {
                            return Err(err(start, "unexpected label"));
                        }
                        if leaves.insert(label.clone(), start).is_some() {
                            return Err(err(start, format!("duplicate leaf `{label}`")));
                        }
                        nodes.push(Parsed {
                            label: Some(label),
                            parent: stack.last().copied(),
                            length: None,
                            internal: false,
                        });
                        last = Some(nodes.len() - 1);
                    }
                }
            }
        }
    }

    let mut b = TreeBuilder::new();
    for n in &nodes {
        b.add_node(n.label.clone());
    }
    for (i, n) in nodes.iter().enumerate() {
        if let Some(p) = n.parent {
            b.connect(p, i, n.length);
        }
    }
    b.finish().map_err(|e| match e {
        PhyloError::TooFewLeaves(n) => err(text.len(), format!("a tree needs at least 3 leaves, got {n}")),
        other => err(text.len(), other.to_string()),
    })
}

fn skip_blank(bytes: &[u8], pos: &mut usize) -> Result<(), IoError> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if bytes.get(*pos) != Some(&b'[') {
            return Ok(());
        }
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos] != b']' {
            *pos += 1;
        }
        if *pos == bytes.len() {
            return Err(err(start, "unterminated comment"));
        }
        *pos += 1;
    }
}

fn read_label(text: &str, pos: &mut usize) -> Result<String, IoError> {
    let bytes = text.as_bytes();
    let start = *pos;
    if bytes[start] == b'\'' {
        let mut out = String::new();
        let mut i = start + 1;
        loop {
            match text[i..].find('\'') {
                None => return Err(err(start, "unterminated quoted label")),
                Some(k) => {
                    out.push_str(&text[i..i + k]);
                    i += k + 1;
                    if bytes.get(i) == Some(&b'\'') {
                        out.push('\'');
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        *pos = i;
        if out.is_empty() {
            return Err(err(start, "empty label"));
        }
        return Ok(out);
    }
    while *pos < bytes.len() && !is_special(bytes[*pos]) {
        *pos += 1;
    }
    if *pos == start {
        return Err(err(start, format!("unexpected `{}`", bytes[start] as char)));
    }
    Ok(text[start..*pos].to_owned())
}

fn is_special(c: u8) -> bool {
    matches!(c, b'(' | b')' | b',' | b':' | b';' | b'[' | b']' | b'\'') || c.is_ascii_whitespace()
}

fn quoted(label: &str) -> String {
    if !label.is_empty() && !label.bytes().any(is_special) {
        return label.to_owned();
    }
    format!("'{}'", label.replace('\'', "''"))
}

/// Canonical Newick: rooted at the neighbor of the smallest leaf label,
/// children ordered by the smallest leaf label beneath them.
pub fn write_newick(tree: &PhyloTree) -> String {
    let labels = tree.leaf_labels();
    let first = tree.leaf_node(&labels[0]).expect("smallest label is a leaf");
    let root = tree.neighbors(first)[0].0;

    let order = tree.preorder(root);
    let mut min_leaf: Vec<Option<&str>> = vec![None; tree.node_count()];
    for &(v, parent) in order.iter().rev() {
        let own = if tree.is_leaf(v) { tree.label(v) } else { None };
        let best = tree
            .neighbors(v)
            .iter()
            .filter(|(c, _)| Some(*c) != parent)
            .filter_map(|(c, _)| min_leaf[*c])
            .chain(own)
            .min();
        min_leaf[v] = best;
    }

    let mut out = String::new();
    write_node(tree, root, None, &min_leaf, &mut out);
    out.push_str(";\n");
    out
}

fn write_node(tree: &PhyloTree, v: usize, parent: Option<usize>, min_leaf: &[Option<&str>], out: &mut String) {
    if tree.is_leaf(v) && parent.is_some() {
        out.push_str(&quoted(tree.label(v).unwrap_or_default()));
        return;
    }
    let mut children: Vec<(usize, Option<f64>)> =
        tree.neighbors(v).iter().copied().filter(|(c, _)| Some(*c) != parent).collect();
    children.sort_by_key(|(c, _)| min_leaf[*c]);
    out.push('(');
    for (i, (c, len)) in children.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_node(tree, *c, Some(v), min_leaf, out);
        if let Some(l) = len {
            out.push(':');
            out.push_str(&l.to_string());
        }
    }
    out.push(')');
    if let Some(l) = tree.label(v) {
        out.push_str(&quoted(l));
    }
}
