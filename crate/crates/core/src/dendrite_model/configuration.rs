use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;

use super::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::labelled_trees::{canonical_code, validate, LabelledTree, OrderLabel, TreeVertex};

const SALT_REALIZE: u64 = 0x5245_414c;

/// The spanned subtree of a tuple with unmarked degree-two vertices
/// suppressed. Each skeleton edge keeps the model path it stands for.
#[derive(Debug, Clone)]
pub(crate) struct Skeleton {
    pub steiner: BTreeSet<VertexId>,
    pub retained: BTreeSet<VertexId>,
    /// `(a, b, interior)` with `a < b` and `interior` listed from `a` to `b`.
    pub edges: Vec<(VertexId, VertexId, Vec<VertexId>)>,
}

impl Skeleton {
    /// The skeleton edge whose interior contains `v`, if any.
    pub fn edge_through(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        self.edges
            .iter()
            .find(|(_, _, interior)| interior.contains(&v))
            .map(|&(a, b, _)| (a, b))
    }
}

impl DendriteModel {
    pub(crate) fn skeleton(&self, tuple: &[VertexId]) -> Result<Skeleton> {
        let steiner = self.steiner_set(tuple)?;
        let marked: BTreeSet<VertexId> = tuple.iter().copied().collect();
        let in_steiner = |v: VertexId| -> Vec<VertexId> {
            self.neighbours(v)
                .iter()
                .copied()
                .filter(|w| steiner.contains(w))
                .collect()
        };
        let retained: BTreeSet<VertexId> = steiner
            .iter()
            .copied()
            .filter(|&v| marked.contains(&v) || in_steiner(v).len() >= 3)
            .collect();
        let mut edges = Vec::new();
        for &r in &retained {
            for start in in_steiner(r) {
                let mut prev = r;
                let mut cur = start;
                let mut interior = Vec::new();
                while !retained.contains(&cur) {
                    interior.push(cur);
                    let next = in_steiner(cur)
                        .into_iter()
                        .find(|&w| w != prev)
                        .expect("suppressed vertices have two spanned neighbours");
                    prev = cur;
                    cur = next;
                }
                if r < cur {
                    edges.push((r, cur, interior));
                }
            }
        }
        Ok(Skeleton {
            steiner,
            retained,
            edges,
        })
    }

    /// The labelled-tree invariant of a tuple: spanned subtree, marked and
    /// branching vertices kept, every vertex labelled by its order.
    pub fn configuration_type(&self, tuple: &[VertexId]) -> Result<LabelledTree> {
        let skeleton = self.skeleton(tuple)?;
        Ok(LabelledTree {
            vertices: skeleton
                .retained
                .iter()
                .map(|&id| TreeVertex {
                    id,
                    label: self.target(id),
                })
                .collect(),
            edges: skeleton.edges.iter().map(|&(a, b, _)| [a, b]).collect(),
            marks: tuple.to_vec(),
        })
    }

    /// Extends the model by a fresh copy of `t` and returns the image of each
    /// coordinate. The copy hangs off a new branch point `g` that sits inside
    /// the image of one edge of `t`, so `g` is suppressed in the type.
    pub fn realize_type(&mut self, t: &LabelledTree) -> Result<Vec<VertexId>> {
        let report = validate(t, self.signature());
        if !report.is_valid() {
            return Err(Error::InvalidTree(report.to_string()));
        }
        canonical_code(t)?;
        let mut rng = self.rng(SALT_REALIZE);
        let edge = *self.edges().choose(&mut rng).expect("models have edges");
        let labels = t.labels();
        let adj = t.adjacency();
        let branch = self.signature().min_branch();
        let mut image: BTreeMap<u32, VertexId> = BTreeMap::new();
        let mut queue = VecDeque::new();

        let mut edges = t.edges.clone();
        edges.sort_unstable();
        match edges.first() {
            None => {
                let (&id, &label) = labels.iter().next().expect("validated trees are nonempty");
                let v = if label == OrderLabel::END {
                    let h = self.insert_on_edge(edge, branch)?;
                    self.sprout(h, label)?
                } else {
                    self.insert_on_edge(edge, label)?
                };
                image.insert(id, v);
            }
            Some(&[u, w]) => {
                let h = self.insert_on_edge(edge, branch)?;
                let g = self.sprout(h, branch)?;
                for end in [u, w] {
                    image.insert(end, self.sprout(g, labels[&end])?);
                    queue.push_back(end);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for &c in &adj[&x] {
                if image.contains_key(&c) {
                    continue;
                }
                let v = self.sprout(image[&x], labels[&c])?;
                image.insert(c, v);
                queue.push_back(c);
            }
        }
        Ok(t.marks.iter().map(|m| image[m]).collect())
    }
}
