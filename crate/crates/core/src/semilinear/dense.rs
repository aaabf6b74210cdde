use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::homogeneity::CheckReport;
use crate::labelled_trees::OrderLabel;

/// Densifies `model` with vertices whose orders lie in `t0_labels`, then
/// checks that every vertex `t` present before the last round is recovered
/// from `D(t) = ↓t ∩ T0` (order seen from the end `z`): the map `t ↦ D(t)`
/// is injective and `sup D(t) = t` among those vertices.
///
/// Each of the `depth` rounds (at least one) inserts a vertex on every edge.
pub fn reconstruct_from_dense(
    model: &mut DendriteModel,
    z: VertexId,
    t0_labels: &[OrderLabel],
    depth: usize,
) -> Result<CheckReport> {
    model.check(z)?;
    if model.target(z) != OrderLabel::END {
        return Err(Error::NotAnEnd(z));
    }
    if t0_labels.is_empty() {
        return Err(Error::InvalidSignature("the dense set needs at least one label".into()));
    }
    let sig = model.signature().clone();
    if let Some(&label) = t0_labels.iter().find(|&&l| !sig.insertable_labels().contains(&l)) {
        return Err(Error::LabelNotAllowed {
            label,
            reason: "dense vertices must have order 2 or an order in S",
        });
    }
    let mut rng = model.rng(0xDE25);
    let mut checked_len = model.len();
    for _ in 0..depth.max(1) {
        checked_len = model.len();
        for edge in model.edges() {
            let label = *t0_labels.choose(&mut rng).expect("nonempty");
            model.insert_on_edge(edge, label)?;
        }
    }

    let parent = model.parents_from(z);
    let in_t0 = |v: VertexId| t0_labels.contains(&model.target(v));
    let below = |t: VertexId| {
        let mut chain = Vec::new();
        let mut cur = Some(t);
        while let Some(a) = cur {
            chain.push(a);
            cur = parent[a as usize];
        }
        chain.sort_unstable();
        chain
    };
    let checked: Vec<VertexId> = (0..checked_len as VertexId).collect();
    let downs: Vec<Vec<VertexId>> = checked.iter().map(|&t| below(t)).collect();

    let mut report = CheckReport::default();
    let mut seen: BTreeMap<Vec<VertexId>, VertexId> = BTreeMap::new();
    for (&t, down) in checked.iter().zip(&downs) {
        report.checked += 1;
        let d: Vec<VertexId> = down.iter().copied().filter(|&a| in_t0(a)).collect();
        let upper: Vec<usize> = (0..checked.len())
            .filter(|&u| d.iter().all(|a| downs[u].binary_search(a).is_ok()))
            .collect();
        let sup = upper
            .iter()
            .copied()
            .find(|&s| upper.iter().all(|&u| downs[u].binary_search(&checked[s]).is_ok()))
            .map(|s| checked[s]);
        if sup != Some(t) {
            report
                .failures
                .push(format!("vertex {t}: supremum of its dense down-set is {sup:?}"));
        }
        if let Some(other) = seen.insert(d, t) {
            report
                .failures
                .push(format!("vertices {other} and {t} have the same dense down-set"));
        }
    }
    Ok(report)
}
