use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Poset, SemiLinearOrder};
use crate::error::Result;

/// Largest order whose full down-chains are found by subset enumeration.
/// Beyond it the rooted-tree shortcut `{↓x}` is used.
pub const ENUMERATION_LIMIT: usize = 12;

/// The completion ĈT: full down-chains ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    /// Chains as sorted element lists; chain `i` is element `i` of `order`.
    pub chains: Vec<Vec<u32>>,
    pub order: SemiLinearOrder,
    /// `x ↦ ↓x`, as chain indices.
    pub embedding: BTreeMap<u32, u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub holds: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawCheck {
    fn fail(checked: usize, witness: String) -> Self {
        LawCheck {
            holds: false,
            checked,
            witness: Some(witness),
        }
    }
}

fn supremum(p: &Poset, set: &[usize]) -> Option<usize> {
    let n = p.len();
    let upper: Vec<usize> = (0..n).filter(|&u| set.iter().all(|&c| p.le_idx(c, u))).collect();
    upper.iter().copied().find(|&s| upper.iter().all(|&u| p.le_idx(s, u)))
}

/// Every down-closed chain of `p` that contains its supremum whenever it has
/// one, found by trying all subsets. Works for any poset of at most 20 elements.
pub fn full_down_chains_by_enumeration(p: &Poset) -> Vec<Vec<u32>> {
    let n = p.len();
    assert!(n <= 20, "subset enumeration over {n} elements");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let chain = set
            .iter()
            .enumerate()
            .all(|(k, &a)| set[k + 1..].iter().all(|&b| p.le_idx(a, b) || p.le_idx(b, a)));
        let down_closed = set
            .iter()
            .all(|&c| (0..n).all(|d| !p.le_idx(d, c) || mask & (1 << d) != 0));
        let full = match supremum(p, &set) {
            Some(s) => mask & (1 << s) != 0,
            None => true,
        };
        if chain && down_closed && full {
            out.push(set.iter().map(|&i| p.elements()[i]).collect());
        }
    }
    out
}

fn full_down_chains(t: &SemiLinearOrder) -> Vec<Vec<u32>> {
    let p = t.poset();
    if p.len() <= ENUMERATION_LIMIT {
        full_down_chains_by_enumeration(p)
    } else {
        // a finite tree order: every full down-chain has a maximum
        p.elements().iter().map(|&x| p.down_set(x)).collect()
    }
}

pub fn completion(t: &SemiLinearOrder) -> Result<Completion> {
    let mut chains = full_down_chains(t);
    chains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let sets: Vec<BTreeSet<u32>> = chains.iter().map(|c| c.iter().copied().collect()).collect();
    let le: Vec<Vec<bool>> = sets
        .iter()
        .map(|a| sets.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    let order = SemiLinearOrder::new(Poset::from_matrix(le))?;
    let p = t.poset();
    let embedding = p
        .elements()
        .iter()
        .map(|&x| {
            let down = p.down_set(x);
            let i = chains
                .iter()
                .position(|c| *c == down)
                .expect("principal down-sets are full");
            (x, i as u32)
        })
        .collect();
    Ok(Completion {
        chains,
        order,
        embedding,
    })
}

/// Every nonempty family of chains has an infimum equal to its intersection,
/// and every nonempty subchain has a supremum. All families are tried up to
/// the enumeration limit, pairs beyond it.
pub fn check_meet_complete(c: &Completion) -> LawCheck {
    let p = c.order.poset();
    let k = p.len();
    let families: Box<dyn Iterator<Item = Vec<usize>>> = if k <= ENUMERATION_LIMIT {
        Box::new((1u32..(1 << k)).map(move |m| (0..k).filter(|&i| m & (1 << i) != 0).collect()))
    } else {
        Box::new((0..k).flat_map(move |i| (i..k).map(move |j| if i == j { vec![i] } else { vec![i, j] })))
    };
    let mut checked = 0;
    for family in families {
        checked += 1;
        let lower: Vec<usize> = (0..k).filter(|&l| family.iter().all(|&f| p.le_idx(l, f))).collect();
        let Some(inf) = lower.iter().copied().find(|&g| lower.iter().all(|&l| p.le_idx(l, g))) else {
            return LawCheck::fail(checked, format!("family {family:?} has no infimum"));
        };
        let mut meet: BTreeSet<u32> = c.chains[family[0]].iter().copied().collect();
        for &f in &family[1..] {
            let other: BTreeSet<u32> = c.chains[f].iter().copied().collect();
            meet = meet.intersection(&other).copied().collect();
        }
        if c.chains[inf].iter().copied().collect::<BTreeSet<_>>() != meet {
            return LawCheck::fail(checked, format!("infimum of {family:?} is not the intersection"));
        }
        let is_chain = family
            .iter()
            .all(|&a| family.iter().all(|&b| p.le_idx(a, b) || p.le_idx(b, a)));
        if is_chain && supremum(p, &family).is_none() {
            return LawCheck::fail(checked, format!("chain {family:?} has no supremum"));
        }
    }
    LawCheck {
        holds: true,
        checked,
        witness: None,
    }
}

/// Whether `x ↦ ↓x` is an order-isomorphism from `t` onto its completion.
pub fn embedding_is_isomorphism(t: &SemiLinearOrder, c: &Completion) -> bool {
    let p = t.poset();
    let q = c.order.poset();
    let images: BTreeSet<u32> = c.embedding.values().copied().collect();
    if c.embedding.len() != p.len() || images.len() != q.len() {
        return false;
    }
    p.elements().iter().all(|&x| {
        p.elements()
            .iter()
            .all(|&y| p.leq(x, y) == q.leq(c.embedding[&x], c.embedding[&y]))
    })
}

/// Completing twice adds nothing: the canonical map Ĉ → ĈĈ is a bijective
/// order-embedding.
pub fn check_idempotent(t: &SemiLinearOrder) -> Result<LawCheck> {
    let once = completion(t)?;
    let twice = completion(&once.order)?;
    let checked = once.chains.len();
    Ok(if embedding_is_isomorphism(&once.order, &twice) {
        LawCheck {
            holds: true,
            checked,
            witness: None,
        }
    } else {
        LawCheck::fail(
            checked,
            format!("{} chains complete to {}", once.chains.len(), twice.chains.len()),
        )
    })
}
