use std::collections::BTreeMap;

use super::canon::{canonical_code, CanonicalCode};
use super::label::{OrderLabel, Signature};
use super::tree::{LabelledTree, TreeVertex};
use crate::error::{Error, Result};

/// All labelled trees on vertices `0..n`, as edge lists, via Prüfer codes.
fn labelled_trees_on(n: usize) -> Vec<Vec<[u32; 2]>> {
    match n {
        0 => Vec::new(),
        1 => vec![Vec::new()],
        2 => vec![vec![[0, 1]]],
        _ => {
            let len = n - 2;
            let total = n.pow(len as u32);
            let mut out = Vec::with_capacity(total);
            let mut seq = vec![0usize; len];
            for mut k in 0..total {
                for slot in seq.iter_mut() {
                    *slot = k % n;
                    k /= n;
                }
                out.push(decode_pruefer(&seq, n));
            }
            out
        }
    }
}

fn decode_pruefer(seq: &[usize], n: usize) -> Vec<[u32; 2]> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf remains");
        edges.push([leaf as u32, s as u32]);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push([rest[0] as u32, rest[1] as u32]);
    edges
}

/// Surjections from `p` coordinates onto `q` vertices in restricted-growth
/// form (first occurrences appear in order 0, 1, …, q−1).
fn restricted_growth(p: usize, q: usize) -> Vec<Vec<u32>> {
    fn go(p: usize, q: usize, cur: &mut Vec<u32>, used: u32, out: &mut Vec<Vec<u32>>) {
        let remaining = p - cur.len();
        if remaining == 0 {
            if used as usize == q {
                out.push(cur.clone());
            }
            return;
        }
        if (q - used as usize) > remaining {
            return;
        }
        for v in 0..used {
            cur.push(v);
            go(p, q, cur, used, out);
            cur.pop();
        }
        if (used as usize) < q {
            cur.push(used);
            go(p, q, cur, used + 1, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(p, q, &mut Vec::with_capacity(p), 0, &mut out);
    out
}

fn for_each_labelling(choices: &[Vec<OrderLabel>], cur: &mut Vec<OrderLabel>, f: &mut impl FnMut(&[OrderLabel])) {
    if cur.len() == choices.len() {
        f(cur);
        return;
    }
    for &l in &choices[cur.len()] {
        cur.push(l);
        for_each_labelling(choices, cur, f);
        cur.pop();
    }
}

/// Every type of `p`-tuple, keyed and ordered by canonical code.
pub fn enumerate_type_codes(
    p: usize,
    sig: &Signature,
    distinct_only: bool,
) -> Result<BTreeMap<CanonicalCode, LabelledTree>> {
    if p == 0 {
        return Err(Error::ZeroArity);
    }
    let point_labels = sig.point_labels();
    let mut found = BTreeMap::new();
    let qs = if distinct_only { p..=p } else { 1..=p };
    for q in qs {
        let assignments = restricted_growth(p, q);
        for unmarked in 0..=q.saturating_sub(2) {
            let n = q + unmarked;
            for edges in labelled_trees_on(n) {
                let mut degree = vec![0usize; n];
                for &[a, b] in &edges {
                    degree[a as usize] += 1;
                    degree[b as usize] += 1;
                }
                if (q..n).any(|v| degree[v] < 3) {
                    continue;
                }
                let choices: Vec<Vec<OrderLabel>> = degree
                    .iter()
                    .map(|&d| point_labels.iter().copied().filter(|l| l.admits_degree(d)).collect())
                    .collect();
                for_each_labelling(&choices, &mut Vec::with_capacity(n), &mut |labels| {
                    for marks in &assignments {
                        let tree = LabelledTree {
                            vertices: labels
                                .iter()
                                .enumerate()
                                .map(|(id, &label)| TreeVertex { id: id as u32, label })
                                .collect(),
                            edges: edges.clone(),
                            marks: marks.clone(),
                        };
                        let code = canonical_code(&tree).expect("generated trees are well formed");
                        found.entry(code).or_insert(tree);
                    }
                });
            }
        }
    }
    Ok(found)
}

/// Complete, duplicate-free list of types with exactly `p` marks, ordered by
/// canonical code. With `distinct_only`, marks name pairwise distinct vertices.
pub fn enumerate_types(p: usize, sig: &Signature, distinct_only: bool) -> Result<Vec<LabelledTree>> {
    Ok(enumerate_type_codes(p, sig, distinct_only)?.into_values().collect())
}

pub fn census_count(p: usize, sig: &Signature, distinct_only: bool) -> Result<usize> {
    Ok(enumerate_type_codes(p, sig, distinct_only)?.len())
}
