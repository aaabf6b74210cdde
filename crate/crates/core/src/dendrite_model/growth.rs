use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DendriteModel, VertexId};
use crate::error::Result;
use crate::labelled_trees::OrderLabel;

const SALT_SATURATE: u64 = 0x5341_5455;
const SALT_GROW: u64 = 0x4752_4f57;

impl DendriteModel {
    /// Grows the model in rounds until it holds `budget` vertices. A round
    /// subdivides every current edge once by each label of {2} ∪ S and then
    /// sprouts one leaf at every unsaturated vertex. Deterministic in the seed.
    pub fn saturate(&mut self, budget: usize) -> Result<()> {
        let mut rng = self.rng(SALT_SATURATE);
        let insertable = self.signature().insertable_labels();
        let point_labels = self.signature().point_labels();
        while self.len() < budget {
            let mut edges = self.edges();
            edges.shuffle(&mut rng);
            for [a, b] in edges {
                let mut labels = insertable.clone();
                labels.shuffle(&mut rng);
                let mut segment = [a, b];
                for label in labels {
                    if self.len() >= budget {
                        return Ok(());
                    }
                    let h = self.insert_on_edge(segment, label)?;
                    segment = if rng.gen_bool(0.5) {
                        [segment[0], h]
                    } else {
                        [h, segment[1]]
                    };
                }
            }
            let open: Vec<VertexId> = self.vertices().filter(|v| !v.is_saturated()).map(|v| v.id).collect();
            for v in open {
                if self.len() >= budget {
                    return Ok(());
                }
                let label = *point_labels.choose(&mut rng).expect("labels are nonempty");
                self.sprout(v, label)?;
            }
        }
        Ok(())
    }

    /// Applies `steps` random extension moves: a subdivision of a random edge
    /// or a sprout at a random unsaturated vertex.
    pub fn grow(&mut self, steps: usize) -> Result<()> {
        let mut rng = self.rng(SALT_GROW);
        let insertable = self.signature().insertable_labels();
        let point_labels = self.signature().point_labels();
        for _ in 0..steps {
            let open: Vec<VertexId> = self.vertices().filter(|v| !v.is_saturated()).map(|v| v.id).collect();
            if open.is_empty() || rng.gen_bool(0.5) {
                let edges = self.edges();
                let edge = *edges.choose(&mut rng).expect("models have edges");
                let label = *insertable.choose(&mut rng).expect("labels are nonempty");
                self.insert_on_edge(edge, label)?;
            } else {
                let at = *open.choose(&mut rng).expect("nonempty");
                let label = *point_labels.choose(&mut rng).expect("labels are nonempty");
                self.sprout(at, label)?;
            }
        }
        Ok(())
    }

    /// Attaches a new leaf of order `label` in a direction at `at` that avoids
    /// `avoid`: sprouting directly when `at` has room, otherwise through a
    /// fresh branch point on an edge leading away from `avoid`.
    pub(crate) fn hang_leaf(
        &mut self,
        at: VertexId,
        label: OrderLabel,
        avoid: &BTreeSet<VertexId>,
    ) -> Result<VertexId> {
        if !self.vertex(at)?.is_saturated() {
            return self.sprout(at, label);
        }
        let away = self
            .neighbours(at)
            .iter()
            .copied()
            .find(|w| !avoid.contains(w))
            .expect("a saturated vertex with a free direction has a neighbour off the avoided set");
        let branch = self.signature().min_branch();
        let h = self.insert_on_edge([at, away], branch)?;
        self.sprout(h, label)
    }
}
