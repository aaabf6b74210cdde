//! A finite, growing tree model of the branch-point structure of D_S.
//!
//! Every edge stands for an arc of the dendrite and may be subdivided by any
//! label in {2} ∪ S at any time; unsaturated vertices may sprout new
//! directions. Ends and regular points are sampled as vertices with targets 1
//! and 2. The model is persisted as its signature, seed and growth log, and
//! replaying the log reproduces it exactly.

mod configuration;
mod geometry;
mod growth;

use std::collections::{BTreeMap, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labelled_trees::{render_dot, OrderLabel, Signature};

pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelVertex {
    pub id: VertexId,
    /// The order in D_S this vertex represents.
    pub target: OrderLabel,
    pub degree: usize,
}

impl ModelVertex {
    pub fn is_saturated(&self) -> bool {
        !self.target.admits_degree(self.degree + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum GrowthStep {
    Insert { edge: [VertexId; 2], label: OrderLabel },
    Sprout { at: VertexId, label: OrderLabel },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub signature: Signature,
    pub seed: u64,
    pub log: Vec<GrowthStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DendriteModel {
    sig: Signature,
    seed: u64,
    targets: Vec<OrderLabel>,
    adj: Vec<Vec<VertexId>>,
    log: Vec<GrowthStep>,
}

impl DendriteModel {
    /// The minimal model: a branch point of order min(S) with three ends.
    pub fn new(sig: Signature, seed: u64) -> Self {
        let center = sig.min_branch();
        let mut model = DendriteModel {
            sig,
            seed,
            targets: vec![center],
            adj: vec![Vec::new()],
            log: Vec::new(),
        };
        for _ in 0..3 {
            let leaf = model.push_vertex(OrderLabel::END);
            model.link(0, leaf);
        }
        model
    }

    pub fn replay(sig: Signature, seed: u64, log: &[GrowthStep]) -> Result<Self> {
        let mut model = DendriteModel::new(sig, seed);
        for (i, step) in log.iter().enumerate() {
            model
                .apply_step(step)
                .map_err(|e| Error::InvalidLog(format!("step {i}: {e}")))?;
        }
        Ok(model)
    }

    pub fn apply_step(&mut self, step: &GrowthStep) -> Result<VertexId> {
        match *step {
            GrowthStep::Insert { edge, label } => self.insert_on_edge(edge, label),
            GrowthStep::Sprout { at, label } => self.sprout(at, label),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn log(&self) -> &[GrowthStep] {
        &self.log
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.targets.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.targets.len() as VertexId
    }

    pub fn vertex(&self, v: VertexId) -> Result<ModelVertex> {
        self.check(v)?;
        Ok(ModelVertex {
            id: v,
            target: self.targets[v as usize],
            degree: self.adj[v as usize].len(),
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = ModelVertex> + '_ {
        self.vertex_ids().map(|v| ModelVertex {
            id: v,
            target: self.targets[v as usize],
            degree: self.adj[v as usize].len(),
        })
    }

    pub fn target(&self, v: VertexId) -> OrderLabel {
        self.targets[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbours(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.contains(a) && self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Edges as `(min, max)` pairs in increasing order.
    pub fn edges(&self) -> Vec<[VertexId; 2]> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (a, ns) in self.adj.iter().enumerate() {
            for &b in ns {
                if (a as VertexId) < b {
                    out.push([a as VertexId, b]);
                }
            }
        }
        out
    }

    pub fn vertices_with_target(&self, label: OrderLabel) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.target(v) == label).collect()
    }

    /// A generator derived from the seed and the current log length, so that
    /// any seeded procedure is reproduced by replaying the log.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        let mix = self
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add((self.log.len() as u64) << 17)
            ^ salt.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        ChaCha8Rng::seed_from_u64(mix)
    }

    pub(crate) fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn push_vertex(&mut self, target: OrderLabel) -> VertexId {
        self.targets.push(target);
        self.adj.push(Vec::new());
        (self.targets.len() - 1) as VertexId
    }

    fn link(&mut self, a: VertexId, b: VertexId) {
        for (x, y) in [(a, b), (b, a)] {
            let ns = &mut self.adj[x as usize];
            let pos = ns.binary_search(&y).unwrap_err();
            ns.insert(pos, y);
        }
    }

    fn unlink(&mut self, a: VertexId, b: VertexId) {
        for (x, y) in [(a, b), (b, a)] {
            let ns = &mut self.adj[x as usize];
            let pos = ns.binary_search(&y).expect("edge exists");
            ns.remove(pos);
        }
    }

    /// Subdivides `edge` by a new vertex of order `label` ∈ {2} ∪ S.
    pub fn insert_on_edge(&mut self, edge: [VertexId; 2], label: OrderLabel) -> Result<VertexId> {
        let [a, b] = edge;
        self.check(a)?;
        self.check(b)?;
        if label == OrderLabel::END {
            return Err(Error::LabelNotAllowed {
                label,
                reason: "an end cannot lie inside an arc",
            });
        }
        if !self.sig.allows(label) {
            return Err(Error::LabelNotAllowed {
                label,
                reason: "label is outside {1,2} ∪ S",
            });
        }
        if !self.has_edge(a, b) {
            return Err(Error::UnknownEdge(a, b));
        }
        let v = self.push_vertex(label);
        self.unlink(a, b);
        self.link(a, v);
        self.link(v, b);
        self.log.push(GrowthStep::Insert { edge, label });
        self.debug_check();
        Ok(v)
    }

    /// Attaches a new leaf of order `leaf_label` at an unsaturated vertex.
    pub fn sprout(&mut self, at: VertexId, leaf_label: OrderLabel) -> Result<VertexId> {
        let vertex = self.vertex(at)?;
        if !self.sig.allows(leaf_label) {
            return Err(Error::LabelNotAllowed {
                label: leaf_label,
                reason: "label is outside {1,2} ∪ S",
            });
        }
        if vertex.is_saturated() {
            return Err(Error::Saturated(at));
        }
        let v = self.push_vertex(leaf_label);
        self.link(at, v);
        self.log.push(GrowthStep::Sprout { at, label: leaf_label });
        self.debug_check();
        Ok(v)
    }

    /// Tree shape, degree bounds and label membership.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.len();
        let edge_count: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if edge_count + 1 != n {
            return Err(Error::InvalidLog(format!("{edge_count} edges for {n} vertices")));
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0 as VertexId]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidLog("model is disconnected".into()));
        }
        for v in self.vertices() {
            if !v.target.admits_degree(v.degree) {
                return Err(Error::InvalidLog(format!(
                    "vertex {} has degree {} above its order {}",
                    v.id, v.degree, v.target
                )));
            }
            if !self.sig.allows(v.target) {
                return Err(Error::InvalidLog(format!(
                    "vertex {} has label {} outside the signature",
                    v.id, v.target
                )));
            }
        }
        Ok(())
    }

    #[cfg(test)]
    fn debug_check(&self) {
        self.check_invariants().expect("model invariants hold after every move");
    }

    #[cfg(not(test))]
    fn debug_check(&self) {}

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            signature: self.sig.clone(),
            seed: self.seed,
            log: self.log.clone(),
        }
    }

    pub fn from_file(file: &ModelFile) -> Result<Self> {
        let model = DendriteModel::replay(file.signature.clone(), file.seed, &file.log)?;
        model.check_invariants()?;
        Ok(model)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(s).map_err(|e| Error::InvalidLog(e.to_string()))?;
        DendriteModel::from_file(&file)
    }

    pub fn to_dot(&self) -> String {
        let edges: Vec<(VertexId, VertexId)> = self.edges().iter().map(|&[a, b]| (a, b)).collect();
        render_dot(
            "dendrite_model",
            self.vertices().map(|v| (v.id, v.target)),
            &edges,
            &BTreeMap::new(),
        )
    }
}
