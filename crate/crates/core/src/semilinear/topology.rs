use serde::Serialize;

use super::{order_from_end, SemiLinearOrder};
use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubbasisKind {
    /// `T ∖ ↑x`
    Complement,
    /// `↑x ∖ {x}`
    StrictlyAbove,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubbasisSet {
    pub kind: SubbasisKind,
    pub point: u32,
    pub members: Vec<u32>,
}

/// The nonempty subbasic open sets of the order topology on `t`.
pub fn subbasis(t: &SemiLinearOrder) -> Vec<SubbasisSet> {
    let p = t.poset();
    let mut out = Vec::new();
    for &x in p.elements() {
        let complement: Vec<u32> = p.elements().iter().copied().filter(|&y| !p.leq(x, y)).collect();
        let above: Vec<u32> = p
            .elements()
            .iter()
            .copied()
            .filter(|&y| y != x && p.leq(x, y))
            .collect();
        for (kind, members) in [
            (SubbasisKind::Complement, complement),
            (SubbasisKind::StrictlyAbove, above),
        ] {
            if !members.is_empty() {
                out.push(SubbasisSet {
                    kind,
                    point: x,
                    members,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub x: VertexId,
    pub y: VertexId,
    pub separator: VertexId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub subbasis: Vec<SubbasisSet>,
    pub separations: Vec<Separation>,
    pub failures: Vec<String>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Separates every pair of distinct vertices by a cut vertex `t`. Seen from
/// the end `z`, incomparable points are separated by their meet; for `x < y`
/// the separator lies strictly between them, inserted when they are adjacent,
/// and `↑t ∖ {t}` is then a subbasic open set holding `y` but not `x`.
pub fn topology_and_separation(model: &mut DendriteModel, z: VertexId) -> Result<SeparationReport> {
    let order = order_from_end(model, z)?;
    let mut report = SeparationReport {
        subbasis: subbasis(&order),
        ..Default::default()
    };
    let leq = |a, b| order.poset().leq(a, b);
    let n = model.len() as VertexId;
    for a in 0..n {
        for b in (a + 1)..n {
            let (x, y) = if leq(b, a) { (b, a) } else { (a, b) };
            let t = if leq(x, y) {
                model.separate(y, x)?
            } else {
                model.median(z, x, y)?
            };
            let between = model.arc(x, y)?;
            let cuts = t != x && t != y && between.contains(&t);
            let above = |v: VertexId| model.arc(z, v).map(|arc| arc.contains(&t));
            let opens = if leq(x, y) {
                above(y)? && !above(x)?
            } else {
                above(x)? && above(y)?
            };
            if !(cuts && opens) {
                report.failures.push(format!("{t} does not separate {x} from {y}"));
            }
            report.separations.push(Separation { x, y, separator: t });
        }
    }
    Ok(report)
}
