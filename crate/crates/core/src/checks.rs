//! Seeded property suites behind `dendrite check`. Every run is a pure
//! function of the suite and the seed, so reports are byte-stable.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::Result;
use crate::homogeneity::{
    build_automorphism, double_transitivity_check, weak_two_transitivity_check, CheckReport, CHECK_MODEL_BUDGET,
};
use crate::labelled_trees::{canonical_code, enumerate_type_codes, CanonicalCode, OrderLabel, Signature};
use crate::reconstruct::{betweenness, betweenness_via_common_arc, common_arc, stabilizer_witness};
use crate::semilinear::{
    check_idempotent, check_meet_complete, completion, embedding_is_isomorphism, is_semilinear, order_from_end,
    reconstruct_from_dense, topology_and_separation, Poset, SemiLinearOrder,
};

/// Failures kept per property; the rest are only counted.
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Census,
    Homogeneity,
    Order,
    Reconstruct,
}

impl Suite {
    const PARTS: [Suite; 4] = [Suite::Census, Suite::Homogeneity, Suite::Order, Suite::Reconstruct];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::PARTS.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Census => "census",
            Suite::Homogeneity => "homogeneity",
            Suite::Order => "order",
            Suite::Reconstruct => "reconstruct",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            Suite::All,
            Suite::Census,
            Suite::Homogeneity,
            Suite::Order,
            Suite::Reconstruct,
        ]
        .into_iter()
        .find(|suite| suite.to_string() == s)
        .ok_or_else(|| format!("unknown suite `{s}` (expected all, census, homogeneity, order or reconstruct)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    fn new(name: &str) -> Self {
        PropertyResult {
            name: name.to_string(),
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, report: CheckReport, context: &str) {
        self.checked += report.checked;
        for f in report.failures {
            self.fail(format!("{context}: {f}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRun {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

pub fn run(suite: Suite, seed: u64) -> Result<CheckRun> {
    let mut suites = Vec::new();
    for part in suite.parts() {
        let properties = match part {
            Suite::Census => census_suite(seed)?,
            Suite::Homogeneity => homogeneity_suite(seed)?,
            Suite::Order => order_suite(seed)?,
            Suite::Reconstruct => reconstruct_suite(seed)?,
            Suite::All => unreachable!("expanded above"),
        };
        suites.push(SuiteReport {
            suite: part.to_string(),
            properties,
        });
    }
    let passed = suites.iter().all(|s| s.properties.iter().all(PropertyResult::passed));
    Ok(CheckRun { seed, passed, suites })
}

fn sig(s: &str) -> Signature {
    Signature::parse(s).expect("built-in signature")
}

fn mix(seed: u64, salt: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt)
}

/// Census cases with their exact counts: `(signature, arity, distinct, count)`.
pub const CENSUS_TABLE: [(&str, usize, bool, usize); 5] = [
    ("3", 1, false, 3),
    ("3", 2, false, 12),
    ("3", 3, true, 81),
    ("3,inf", 1, false, 4),
    ("3,inf", 2, true, 16),
];

/// Samples a tuple: a random equality pattern (all-distinct when
/// `distinct`), then distinct vertices for its blocks.
pub fn sample_tuple(model: &DendriteModel, arity: usize, distinct: bool, rng: &mut impl Rng) -> Vec<VertexId> {
    let pattern: Vec<usize> = if distinct {
        (0..arity).collect()
    } else {
        let mut p = Vec::with_capacity(arity);
        let mut blocks = 0;
        for _ in 0..arity {
            let b = rng.gen_range(0..=blocks);
            if b == blocks {
                blocks += 1;
            }
            p.push(b);
        }
        p
    };
    let blocks = pattern.iter().max().map_or(0, |m| m + 1);
    let ids: Vec<VertexId> = model.vertex_ids().collect();
    let picks: Vec<VertexId> = ids.choose_multiple(rng, blocks).copied().collect();
    pattern.into_iter().map(|b| picks[b]).collect()
}

fn census_suite(seed: u64) -> Result<Vec<PropertyResult>> {
    let mut counts = PropertyResult::new("census_counts");
    let mut oracle = PropertyResult::new("census_model_sampling");
    for (i, &(s, p, distinct, expected)) in CENSUS_TABLE.iter().enumerate() {
        let sig = sig(s);
        let types = enumerate_type_codes(p, &sig, distinct)?;
        counts.check(types.len() == expected, || {
            format!(
                "S={{{s}}} p={p} distinct={distinct}: {} types, expected {expected}",
                types.len()
            )
        });

        let mut model = DendriteModel::new(sig, mix(seed, i as u64));
        model.saturate(CHECK_MODEL_BUDGET)?;
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 100 + i as u64));
        let mut seen: BTreeSet<CanonicalCode> = BTreeSet::new();
        for _ in 0..10_000 {
            let tuple = sample_tuple(&model, p, distinct, &mut rng);
            let code = canonical_code(&model.configuration_type(&tuple)?)?;
            if !types.contains_key(&code) && !seen.contains(&code) {
                oracle.fail(format!("S={{{s}}} p={p}: sampled type {code} is not enumerated"));
            }
            seen.insert(code);
        }
        oracle.checked += 1;
        if p <= 2 {
            for code in types.keys().filter(|c| !seen.contains(*c)) {
                oracle.fail(format!("S={{{s}}} p={p}: enumerated type {code} never sampled"));
            }
        }
    }
    Ok(vec![counts, oracle])
}

fn homogeneity_suite(seed: u64) -> Result<Vec<PropertyResult>> {
    let mut extension = PropertyResult::new("automorphism_extension");
    let sigs = ["3", "3,4", "inf"];
    for (k, s) in sigs.iter().enumerate() {
        let mut model = DendriteModel::new(sig(s), mix(seed, 200 + k as u64));
        model.saturate(120)?;
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 210 + k as u64));
        let pairs = 200 / sigs.len() + usize::from(k < 200 % sigs.len());
        for i in 0..pairs {
            let arity = 1 + i % 4;
            let a = sample_tuple(&model, arity, true, &mut rng);
            let t = model.configuration_type(&a)?;
            let b = model.realize_type(&t)?;
            let same = canonical_code(&model.configuration_type(&b)?)? == canonical_code(&t)?;
            if !same {
                extension.check(false, || {
                    format!("S={{{s}}}: realized {b:?} differs in type from {a:?}")
                });
                continue;
            }
            let mut auto = build_automorphism(model.clone(), &a, &b, rng.gen())?;
            let mut ok = true;
            for _ in 0..3 {
                let v = rng.gen_range(0..model.len() as VertexId);
                auto.apply(v)?;
                ok &= auto.holds()?;
            }
            extension.check(ok, || {
                format!("S={{{s}}}: automorphism {a:?} -> {b:?} broke the joint type")
            });
        }
    }

    let mut double = PropertyResult::new("double_transitivity");
    let mut weak = PropertyResult::new("weak_two_transitivity");
    for (k, s) in ["3", "3,inf"].iter().enumerate() {
        let sig = sig(s);
        for label in sig.point_labels() {
            let report = double_transitivity_check(&sig, label, 500, mix(seed, 300 + k as u64))?;
            double.absorb(report, &format!("S={{{s}}} label {label}"));
        }
        for n in sig.branch_orders() {
            let report = weak_two_transitivity_check(&sig, n, 500, mix(seed, 310 + k as u64))?;
            weak.absorb(report, &format!("S={{{s}}} n={n}"));
        }
    }

    let mut entourage = PropertyResult::new("entourage_monotonicity");
    let mut model = DendriteModel::new(sig("3"), mix(seed, 400));
    model.saturate(150)?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 401));
    let ids: Vec<VertexId> = model.vertex_ids().collect();
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let small: BTreeSet<VertexId> = ids.choose_multiple(&mut rng, a).copied().collect();
        let mut large = small.clone();
        large.extend(ids.choose_multiple(&mut rng, b).copied());
        let mut ok = true;
        for _ in 0..10 {
            let x = *ids.choose(&mut rng).expect("nonempty");
            let y = *ids.choose(&mut rng).expect("nonempty");
            if model.entourage_related(x, y, &large)? && !model.entourage_related(x, y, &small)? {
                ok = false;
            }
        }
        entourage.check(ok, || format!("U_F' not inside U_F for F={small:?}, F'={large:?}"));
    }
    Ok(vec![extension, double, weak, entourage])
}

/// Every finite rooted tree order on `n` elements up to isomorphism, as an
/// increasing tree: element `i > 0` has a parent below `i`.
pub fn increasing_tree_orders(n: usize) -> Vec<SemiLinearOrder> {
    if n == 0 {
        return vec![SemiLinearOrder::new(Poset::new([], []).expect("empty poset")).expect("vacuous")];
    }
    let mut out = Vec::new();
    let mut parent = vec![0u32; n];
    loop {
        let leq = (1..n as u32).map(|i| (parent[i as usize], i));
        let p = Poset::new(0..n as u32, leq).expect("parent edges point downwards");
        out.push(SemiLinearOrder::new(p).expect("rooted trees are semi-linear"));
        // odometer over parent[i] in 0..i
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if (parent[i] as usize) + 1 < i {
                parent[i] += 1;
                break;
            }
            parent[i] = 0;
            i -= 1;
        }
    }
}

fn order_suite(seed: u64) -> Result<Vec<PropertyResult>> {
    let mut laws = PropertyResult::new("completion_laws");
    for n in 0..=6 {
        for t in increasing_tree_orders(n) {
            let c = completion(&t)?;
            let iso = n == 0 || embedding_is_isomorphism(&t, &c);
            let meet = check_meet_complete(&c);
            let idem = check_idempotent(&t)?;
            laws.check(iso && meet.holds && idem.holds, || {
                format!(
                    "order {:?}: iso={iso} meet={:?} idempotent={:?}",
                    t.poset().to_file().leq,
                    meet.witness,
                    idem.witness
                )
            });
        }
    }

    let mut from_end = PropertyResult::new("order_from_end");
    let mut dense = PropertyResult::new("dense_reconstruction");
    let mut separation = PropertyResult::new("separation");
    for k in 0..3u64 {
        let mut model = DendriteModel::new(sig("3"), mix(seed, 500 + k));
        model.grow(40)?;
        for z in model.vertices_with_target(OrderLabel::END).into_iter().take(3) {
            let t = order_from_end(&model, z)?;
            from_end.check(is_semilinear(t.poset()), || {
                format!("order from end {z} is not semi-linear")
            });
        }

        let mut saturated = DendriteModel::new(sig("3"), mix(seed, 510 + k));
        saturated.saturate(60)?;
        let z = saturated.vertices_with_target(OrderLabel::END)[0];
        dense.absorb(
            reconstruct_from_dense(&mut saturated, z, &[OrderLabel::Finite(3)], 2)?,
            "T0 = order-3 points",
        );

        let mut small = DendriteModel::new(sig("3"), mix(seed, 520 + k));
        small.grow(12)?;
        let z = small.vertices_with_target(OrderLabel::END)[0];
        let report = topology_and_separation(&mut small, z)?;
        separation.checked += report.separations.len();
        for f in report.failures {
            separation.fail(f);
        }
    }
    Ok(vec![laws, from_end, dense, separation])
}

fn reconstruct_suite(seed: u64) -> Result<Vec<PropertyResult>> {
    let mut witness = PropertyResult::new("stabilizer_witness_iff_not_common_arc");
    let mut between = PropertyResult::new("betweenness_via_common_arc");
    let mut coherence = PropertyResult::new("tripod_centre_fixed");
    let mut tripods_left = 10;
    for k in 0..5u64 {
        let mut model = DendriteModel::new(sig("3,inf"), mix(seed, 600 + k));
        model.grow(60)?;
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 610 + k));
        for _ in 0..100 {
            let ids: Vec<VertexId> = model.vertex_ids().collect();
            let yz: Vec<VertexId> = ids.choose_multiple(&mut rng, 2).copied().collect();
            let (y, z) = (yz[0], yz[1]);
            let x = if rng.gen_bool(0.5) {
                *model.arc(y, z)?.choose(&mut rng).expect("arcs are nonempty")
            } else {
                *ids.choose(&mut rng).expect("nonempty")
            };

            if x != y && x != z {
                let w = stabilizer_witness(&model, x, y, z)?;
                let ca = common_arc(&model, x, y, z)?;
                witness.check(w.is_some() != ca, || {
                    format!("({x},{y},{z}): witness {w:?} but common_arc={ca}")
                });
                if let (Some(w), true) = (w, tripods_left > 0) {
                    tripods_left -= 1;
                    let mut fixed = true;
                    for s in 0..20 {
                        let mut auto = build_automorphism(model.clone(), &[x, y, z], &[x, y, z], mix(seed, s))?;
                        let extra = rng.gen_range(0..model.len() as VertexId);
                        auto.apply(extra)?;
                        fixed &= auto.apply(w)? == w;
                    }
                    coherence.check(fixed, || format!("centre {w} of ({x},{y},{z}) moved"));
                }
            }

            let truth = betweenness(&model, x, y, z)?;
            match betweenness_via_common_arc(&mut model, x, y, z, 2) {
                Ok(d) => between.check(d.between == truth && d.extensions <= 2, || {
                    format!(
                        "({x},{y},{z}): decided {} after {} extensions, truth {truth}",
                        d.between, d.extensions
                    )
                }),
                Err(e) => between.check(false, || format!("({x},{y},{z}): {e}")),
            }
        }
    }
    Ok(vec![witness, between, coherence])
}
