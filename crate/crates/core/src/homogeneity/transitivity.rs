use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::partial_iso::build_automorphism;
use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::labelled_trees::{canonical_code, CanonicalCode, LabelledTree, OrderLabel, Signature, TreeVertex};

/// Model size used by the sampling checks.
pub const CHECK_MODEL_BUDGET: usize = 400;

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn path_code(labels: &[OrderLabel]) -> CanonicalCode {
    let n = labels.len() as u32;
    let tree = LabelledTree {
        vertices: labels
            .iter()
            .enumerate()
            .map(|(i, &label)| TreeVertex { id: i as u32, label })
            .collect(),
        edges: (1..n).map(|i| [i - 1, i]).collect(),
        marks: (0..n).collect(),
    };
    canonical_code(&tree).expect("paths are well formed")
}

fn saturated_model(sig: &Signature, seed: u64) -> Result<DendriteModel> {
    let mut model = DendriteModel::new(sig.clone(), seed);
    model.saturate(CHECK_MODEL_BUDGET)?;
    Ok(model)
}

/// Samples ordered pairs of distinct vertices of order `label` and checks that
/// they all have the type of an edge labelled `(label, label)`. Every tenth
/// pair is also reached by an explicit automorphism from the first pair.
pub fn double_transitivity_check(sig: &Signature, label: OrderLabel, trials: usize, seed: u64) -> Result<CheckReport> {
    if !sig.allows(label) {
        return Err(Error::LabelNotAllowed {
            label,
            reason: "label is outside {1,2} ∪ S",
        });
    }
    let model = saturated_model(sig, seed)?;
    let pool = model.vertices_with_target(label);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD0B1);
    let mut report = CheckReport::default();
    if pool.len() < 2 {
        report
            .failures
            .push(format!("model holds fewer than two vertices of order {label}"));
        return Ok(report);
    }
    let expected = path_code(&[label, label]);
    let reference: Vec<VertexId> = pool.choose_multiple(&mut rng, 2).copied().collect();
    for trial in 0..trials {
        let pair: Vec<VertexId> = pool.choose_multiple(&mut rng, 2).copied().collect();
        report.checked += 1;
        let code = canonical_code(&model.configuration_type(&pair)?)?;
        if code != expected {
            report
                .failures
                .push(format!("pair {pair:?} has type {code}, expected {expected}"));
            continue;
        }
        if trial % 10 == 0 {
            let mut auto = build_automorphism(model.clone(), &reference, &pair, seed ^ trial as u64)?;
            let extra = rng.gen_range(0..model.len() as VertexId);
            auto.apply(extra)?;
            if !auto.holds()? {
                report
                    .failures
                    .push(format!("automorphism {reference:?} -> {pair:?} broke at {extra}"));
            }
        }
    }
    Ok(report)
}

/// Outcome of one `(z, x, y)` probe for weak two-transitivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakPairOutcome {
    Checked(CanonicalCode),
    SkippedEqual,
    SkippedIncomparable,
}

/// Classifies `(z, x, y)` when `x` lies strictly below `y` in the order seen
/// from the end `z`.
pub fn weak_pair_type(model: &DendriteModel, z: VertexId, x: VertexId, y: VertexId) -> Result<WeakPairOutcome> {
    if x == y {
        return Ok(WeakPairOutcome::SkippedEqual);
    }
    if !model.arc(z, y)?.contains(&x) {
        return Ok(WeakPairOutcome::SkippedIncomparable);
    }
    Ok(WeakPairOutcome::Checked(canonical_code(
        &model.configuration_type(&[z, x, y])?,
    )?))
}

/// Checks a given list of pairs against the single expected type of an
/// aligned triple `z < x < y` labelled `(1, n, n)`.
pub fn weak_two_transitivity_pairs(
    model: &DendriteModel,
    z: VertexId,
    n: OrderLabel,
    pairs: &[(VertexId, VertexId)],
) -> Result<CheckReport> {
    if model.target(z) != OrderLabel::END {
        return Err(Error::NotAnEnd(z));
    }
    let expected = path_code(&[OrderLabel::END, n, n]);
    let mut report = CheckReport::default();
    for &(x, y) in pairs {
        if model.target(x) != n || model.target(y) != n {
            report.skipped += 1;
            continue;
        }
        match weak_pair_type(model, z, x, y)? {
            WeakPairOutcome::Checked(code) => {
                report.checked += 1;
                if code != expected {
                    report
                        .failures
                        .push(format!("triple ({z},{x},{y}) has type {code}, expected {expected}"));
                }
            }
            WeakPairOutcome::SkippedEqual | WeakPairOutcome::SkippedIncomparable => {
                report.skipped += 1;
            }
        }
    }
    Ok(report)
}

/// Samples pairs of order-`n` vertices below a fixed end until `trials`
/// comparable pairs have been checked. Half of the draws take `x` on the arc
/// under `y`, the rest are unconstrained and mostly get skipped.
pub fn weak_two_transitivity_check(sig: &Signature, n: OrderLabel, trials: usize, seed: u64) -> Result<CheckReport> {
    if !sig.contains(n) {
        return Err(Error::LabelNotAllowed {
            label: n,
            reason: "weak two-transitivity concerns branch orders in S",
        });
    }
    let model = saturated_model(sig, seed)?;
    let z = model.vertices_with_target(OrderLabel::END)[0];
    let pool = model.vertices_with_target(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3EA4);
    let mut total = CheckReport::default();
    let max_draws = trials.saturating_mul(50).max(1);
    let mut draws = 0;
    while total.checked < trials && draws < max_draws && !pool.is_empty() {
        draws += 1;
        let y = *pool.choose(&mut rng).expect("nonempty");
        let x = if rng.gen_bool(0.5) {
            let below: Vec<VertexId> = model
                .arc(z, y)?
                .into_iter()
                .filter(|&v| v != y && model.target(v) == n)
                .collect();
            match below.choose(&mut rng) {
                Some(&x) => x,
                None => *pool.choose(&mut rng).expect("nonempty"),
            }
        } else {
            *pool.choose(&mut rng).expect("nonempty")
        };
        let r = weak_two_transitivity_pairs(&model, z, n, &[(x, y)])?;
        total.checked += r.checked;
        total.skipped += r.skipped;
        total.failures.extend(r.failures);
    }
    if total.checked < trials {
        total.failures.push(format!(
            "only {} comparable pairs found in {draws} draws",
            total.checked
        ));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Signature {
        Signature::parse(x).unwrap()
    }

    #[test]
    fn double_transitivity_on_each_label() {
        let sig = s("3");
        for label in sig.point_labels() {
            let report = double_transitivity_check(&sig, label, 40, 3).unwrap();
            assert_eq!(report.checked, 40);
            assert!(report.passed(), "{label}: {:?}", report.failures);
        }
        assert!(double_transitivity_check(&sig, OrderLabel::Finite(4), 1, 0).is_err());
    }

    #[test]
    fn weak_two_transitivity_passes() {
        let report = weak_two_transitivity_check(&s("3"), OrderLabel::Finite(3), 60, 5).unwrap();
        assert_eq!(report.checked, 60);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn supplied_pairs_are_skipped_when_not_comparable() {
        let mut m = DendriteModel::new(s("3"), 1);
        let a = m.insert_on_edge([0, 1], OrderLabel::Finite(3)).unwrap();
        let b = m.insert_on_edge([0, 2], OrderLabel::Finite(3)).unwrap();
        // seen from end 3: 0 lies below both a and b, a and b are incomparable
        let report = weak_two_transitivity_pairs(&m, 3, OrderLabel::Finite(3), &[(0, a), (a, b), (a, a)]).unwrap();
        assert_eq!(report.checked, 1);
        assert_eq!(report.skipped, 2);
        assert!(report.passed());
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"checked":1,"skipped":2,"failures":[]}"#
        );
    }
}
