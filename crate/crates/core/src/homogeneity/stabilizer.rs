use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::labelled_trees::{encode_rooted, LabelledTree, OrderLabel};

/// A positive integer kept as its prime factorisation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactoredCount {
    exponents: BTreeMap<u64, u32>,
}

impl FactoredCount {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn of(mut n: u64) -> Self {
        assert!(n > 0, "factored counts are positive");
        let mut out = Self::one();
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                *out.exponents.entry(p).or_default() += 1;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            *out.exponents.entry(n).or_default() += 1;
        }
        out
    }

    pub fn factorial(m: u64) -> Self {
        let mut out = Self::one();
        for k in 2..=m {
            out.mul_assign(&Self::of(k));
        }
        out
    }

    pub fn mul_assign(&mut self, other: &FactoredCount) {
        for (&p, &e) in &other.exponents {
            *self.exponents.entry(p).or_default() += e;
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        FactoredCount {
            exponents: self.exponents.iter().map(|(&p, &e)| (p, e * k)).collect(),
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u32> {
        &self.exponents
    }

    /// The value, if it fits.
    pub fn value(&self) -> Option<u128> {
        self.exponents.iter().try_fold(1u128, |acc, (&p, &e)| {
            (p as u128).checked_pow(e).and_then(|f| acc.checked_mul(f))
        })
    }
}

impl fmt::Display for FactoredCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

/// Branches at a vertex that are isomorphic as rooted labelled trees. The
/// stabiliser permutes them freely and acts independently inside each one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchClass {
    pub code: String,
    pub multiplicity: usize,
    /// Neighbour of the fixed vertex that roots one representative branch.
    pub representative: u32,
    /// Stabiliser of the representative branch, fixing its root.
    pub branch: StabilizerDecomposition,
}

/// The stabiliser of a vertex as an iterated wreath product:
/// `∏_classes (Aut(branch) ≀ Sym(multiplicity))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerDecomposition {
    pub vertex: u32,
    pub order: FactoredCount,
    pub classes: Vec<BranchClass>,
}

fn decompose(
    adj: &BTreeMap<u32, Vec<u32>>,
    labels: &BTreeMap<u32, OrderLabel>,
    no_marks: &BTreeMap<u32, Vec<usize>>,
    v: u32,
    parent: Option<u32>,
) -> StabilizerDecomposition {
    let mut by_code: BTreeMap<Vec<u8>, Vec<u32>> = BTreeMap::new();
    for &c in adj[&v].iter().filter(|&&c| Some(c) != parent) {
        by_code
            .entry(encode_rooted(adj, labels, no_marks, c, Some(v)))
            .or_default()
            .push(c);
    }
    let mut order = FactoredCount::one();
    let mut classes = Vec::with_capacity(by_code.len());
    for (code, members) in by_code {
        let branch = decompose(adj, labels, no_marks, members[0], Some(v));
        let m = members.len();
        order.mul_assign(&FactoredCount::factorial(m as u64));
        order.mul_assign(&branch.order.pow(m as u32));
        classes.push(BranchClass {
            code: String::from_utf8(code).expect("codes are ascii"),
            multiplicity: m,
            representative: members[0],
            branch,
        });
    }
    StabilizerDecomposition {
        vertex: v,
        order,
        classes,
    }
}

/// Order of the group of label-preserving automorphisms of `tree` fixing
/// `x`, with its branch-class structure. Marks are ignored.
pub fn stabilizer_order(tree: &LabelledTree, x: u32) -> Result<StabilizerDecomposition> {
    let stripped = LabelledTree {
        marks: Vec::new(),
        ..tree.clone()
    };
    stripped.check_structure()?;
    let labels = stripped.labels();
    if !labels.contains_key(&x) {
        return Err(Error::UnknownVertex(x));
    }
    let adj = stripped.adjacency();
    Ok(decompose(&adj, &labels, &BTreeMap::new(), x, None))
}
