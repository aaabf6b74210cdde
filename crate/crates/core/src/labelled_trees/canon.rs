use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::label::OrderLabel;
use super::tree::LabelledTree;
use crate::error::{Error, Result};

/// Canonical byte string of a marked labelled tree. Equal codes mean a
/// label- and mark-preserving isomorphism exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("codes are ascii")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// AHU-style encoding of the subtree below `root`: `(label;marks;children)`
/// with children sorted bytewise. Self-delimiting, so sorted concatenation is
/// injective on rooted isomorphism classes.
pub(crate) fn encode_rooted(
    adj: &BTreeMap<u32, Vec<u32>>,
    labels: &BTreeMap<u32, OrderLabel>,
    marks_at: &BTreeMap<u32, Vec<usize>>,
    root: u32,
    parent: Option<u32>,
) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = adj[&root]
        .iter()
        .filter(|&&c| Some(c) != parent)
        .map(|&c| encode_rooted(adj, labels, marks_at, c, Some(root)))
        .collect();
    children.sort_unstable();
    let mut out = Vec::with_capacity(8 + children.iter().map(Vec::len).sum::<usize>());
    out.push(b'(');
    out.extend_from_slice(labels[&root].token().as_bytes());
    out.push(b';');
    if let Some(ms) = marks_at.get(&root) {
        let joined: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        out.extend_from_slice(joined.join(",").as_bytes());
    }
    out.push(b';');
    for c in children {
        out.extend_from_slice(&c);
    }
    out.push(b')');
    out
}

pub(crate) fn marks_by_vertex(marks: &[u32]) -> BTreeMap<u32, Vec<usize>> {
    let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &m) in marks.iter().enumerate() {
        out.entry(m).or_default().push(i);
    }
    out
}

/// Roots the tree at its first mark and encodes bottom-up.
pub fn canonical_code(tree: &LabelledTree) -> Result<CanonicalCode> {
    let root = *tree.marks.first().ok_or(Error::EmptyMarks)?;
    tree.check_structure()?;
    let adj = tree.adjacency();
    let labels = tree.labels();
    let marks_at = marks_by_vertex(&tree.marks);
    Ok(CanonicalCode(encode_rooted(&adj, &labels, &marks_at, root, None)))
}

pub fn is_isomorphic(t1: &LabelledTree, t2: &LabelledTree) -> Result<bool> {
    Ok(canonical_code(t1)? == canonical_code(t2)?)
}
