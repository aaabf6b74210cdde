//! Semi-linear orders and their completion by full down-chains.
//!
//! A finite semi-linear order is a rooted tree order. Its completion ĈT is the
//! set of full down-chains ordered by inclusion; for finite T the map
//! x ↦ ↓x is onto, and the laws of the completion (meet-completeness,
//! idempotence) can be checked exhaustively.

mod completion;
mod dense;
mod topology;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::labelled_trees::OrderLabel;

pub use completion::{
    check_idempotent, check_meet_complete, completion, embedding_is_isomorphism, full_down_chains_by_enumeration,
    Completion, LawCheck, ENUMERATION_LIMIT,
};
pub use dense::reconstruct_from_dense;
pub use topology::{subbasis, topology_and_separation, Separation, SeparationReport, SubbasisKind, SubbasisSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<u32>,
    pub leq: Vec<[u32; 2]>,
}

/// A finite partial order on `u32` ids, stored as a dense relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<u32>,
    index: BTreeMap<u32, usize>,
    le: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `leq` and rejects cycles.
    pub fn new(elements: impl IntoIterator<Item = u32>, leq: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut elements: Vec<u32> = elements.into_iter().collect();
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPoset("duplicate element".into()));
        }
        let index: BTreeMap<u32, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elements.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in leq {
            let (&i, &j) = index
                .get(&a)
                .zip(index.get(&b))
                .ok_or_else(|| Error::InvalidPoset(format!("pair ({a},{b}) names an unknown element")))?;
            le[i][j] = true;
        }
        for k in 0..n {
            let through = le[k].clone();
            for row in le.iter_mut().filter(|row| row[k]) {
                row.iter_mut().zip(&through).for_each(|(c, &t)| *c |= t);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i][j] && le[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} are below each other",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(Poset { elements, index, le })
    }

    pub(crate) fn from_matrix(le: Vec<Vec<bool>>) -> Self {
        let elements: Vec<u32> = (0..le.len() as u32).collect();
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Poset { elements, index, le }
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        Poset::new(file.elements.iter().copied(), file.leq.iter().map(|&[a, b]| (a, b)))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(s).map_err(|e| Error::InvalidPoset(e.to_string()))?;
        Poset::from_file(&file)
    }

    /// The full relation, reflexive pairs included.
    pub fn to_file(&self) -> PosetFile {
        let mut leq = Vec::new();
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                if self.le[i][j] {
                    leq.push([a, b]);
                }
            }
        }
        PosetFile {
            elements: self.elements.clone(),
            leq,
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.index.contains_key(&x)
    }

    pub(crate) fn idx(&self, x: u32) -> usize {
        self.index[&x]
    }

    pub(crate) fn le_idx(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn leq(&self, x: u32, y: u32) -> bool {
        match (self.index.get(&x), self.index.get(&y)) {
            (Some(&i), Some(&j)) => self.le[i][j],
            _ => false,
        }
    }

    pub fn comparable(&self, x: u32, y: u32) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn down_set(&self, x: u32) -> Vec<u32> {
        let j = self.idx(x);
        (0..self.len())
            .filter(|&i| self.le[i][j])
            .map(|i| self.elements[i])
            .collect()
    }

    pub fn up_set(&self, x: u32) -> Vec<u32> {
        let i = self.idx(x);
        (0..self.len())
            .filter(|&j| self.le[i][j])
            .map(|j| self.elements[j])
            .collect()
    }
}

/// Why an order fails to be semi-linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SemiLinearViolation {
    /// `x` and `y` have no common lower bound.
    NotDirected { x: u32, y: u32 },
    /// `a` and `b` lie below `x` but are incomparable.
    DownSetNotChain { x: u32, a: u32, b: u32 },
}

impl fmt::Display for SemiLinearViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiLinearViolation::NotDirected { x, y } => {
                write!(f, "{x} and {y} have no common lower bound")
            }
            SemiLinearViolation::DownSetNotChain { x, a, b } => {
                write!(f, "{a} and {b} lie below {x} but are incomparable")
            }
        }
    }
}

/// The first violated axiom, if any.
pub fn semilinearity_witness(p: &Poset) -> Option<SemiLinearViolation> {
    let n = p.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if !(0..n).any(|s| p.le[s][i] && p.le[s][j]) {
                return Some(SemiLinearViolation::NotDirected {
                    x: p.elements[i],
                    y: p.elements[j],
                });
            }
        }
    }
    for x in 0..n {
        let below: Vec<usize> = (0..n).filter(|&a| p.le[a][x]).collect();
        for (k, &a) in below.iter().enumerate() {
            for &b in &below[k + 1..] {
                if !p.le[a][b] && !p.le[b][a] {
                    return Some(SemiLinearViolation::DownSetNotChain {
                        x: p.elements[x],
                        a: p.elements[a],
                        b: p.elements[b],
                    });
                }
            }
        }
    }
    None
}

pub fn is_semilinear(p: &Poset) -> bool {
    semilinearity_witness(p).is_none()
}

/// A poset known to be downwards directed with every principal down-set a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiLinearOrder(Poset);

impl SemiLinearOrder {
    pub fn new(p: Poset) -> Result<Self> {
        match semilinearity_witness(&p) {
            None => Ok(SemiLinearOrder(p)),
            Some(w) => Err(Error::NotSemiLinear(w.to_string())),
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.0
    }

    pub fn into_poset(self) -> Poset {
        self.0
    }

    /// Greatest common lower bound; exists in every finite semi-linear order.
    pub fn meet(&self, x: u32, y: u32) -> Option<u32> {
        let p = &self.0;
        let lower: Vec<u32> = p
            .elements
            .iter()
            .copied()
            .filter(|&s| p.leq(s, x) && p.leq(s, y))
            .collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&s| p.leq(s, m)))
    }
}

/// The order seen from the end `z`: `x ≤ y` iff `x` lies on the arc from `z` to `y`.
pub fn order_from_end(model: &DendriteModel, z: VertexId) -> Result<SemiLinearOrder> {
    model.check(z)?;
    if model.target(z) != OrderLabel::END {
        return Err(Error::NotAnEnd(z));
    }
    let parent = model.parents_from(z);
    let n = model.len();
    let mut le = vec![vec![false; n]; n];
    #[allow(clippy::needless_range_loop)]
    for y in 0..n {
        let mut cur = Some(y as VertexId);
        while let Some(a) = cur {
            le[a as usize][y] = true;
            cur = parent[a as usize];
        }
    }
    Ok(SemiLinearOrder(Poset::from_matrix(le)))
}
