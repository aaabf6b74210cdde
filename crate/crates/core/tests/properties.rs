mod common;

use std::collections::BTreeSet;

use dendrite::dendrite_model::{DendriteModel, VertexId};
use dendrite::labelled_trees::{canonical_code, enumerate_type_codes, validate, OrderLabel, Signature};
use dendrite::reconstruct::{common_arc, stabilizer_witness};
use dendrite::semilinear::{completion, embedding_is_isomorphism, is_semilinear, order_from_end, Poset};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const SIGS: [&str; 4] = ["3", "3,4", "inf", "3,inf"];

fn grown(sig_idx: usize, seed: u64, steps: usize) -> DendriteModel {
    let mut m = DendriteModel::new(Signature::parse(SIGS[sig_idx]).unwrap(), seed);
    m.grow(steps).unwrap();
    m
}

fn pick(model: &DendriteModel, k: usize, rng: &mut ChaCha8Rng) -> Vec<VertexId> {
    let ids: Vec<VertexId> = model.vertex_ids().collect();
    (0..k).map(|_| *ids.choose(rng).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_code_is_a_complete_invariant(seed in any::<u64>(), n in 1usize..7, p in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = [OrderLabel::END, OrderLabel::REGULAR];
        let a = random_tree(n, &pool, p, &mut rng);
        let a2 = relabel(&a, &mut rng);
        prop_assert_eq!(canonical_code(&a).unwrap(), canonical_code(&a2).unwrap());
        let b = random_tree(n, &pool, p, &mut rng);
        let same_code = canonical_code(&a).unwrap() == canonical_code(&b).unwrap();
        prop_assert_eq!(same_code, brute_force_isomorphic(&a, &b));
    }

    #[test]
    fn arcs_and_medians_are_symmetric(s in 0usize..4, seed in any::<u64>(), steps in 0usize..40) {
        let m = grown(s, seed, steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let t = pick(&m, 3, &mut rng);
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut back = m.arc(y, x).unwrap();
        back.reverse();
        prop_assert_eq!(m.arc(x, y).unwrap(), back);
        prop_assert_eq!(m.arc(x, y).unwrap(), model_path(&m, x, y));
        let med = m.median(x, y, z).unwrap();
        for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert_eq!(m.median(a, b, c).unwrap(), med);
        }
        for (a, b) in [(x, y), (y, z), (x, z)] {
            prop_assert!(model_path(&m, a, b).contains(&med));
        }
    }

    #[test]
    fn first_point_is_idempotent(s in 0usize..4, seed in any::<u64>(), steps in 0usize..40, k in 1usize..5) {
        let m = grown(s, seed, steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let t = pick(&m, k + 1, &mut rng);
        let target = m.steiner_set(&t[1..]).unwrap();
        let f = m.first_point(t[0], &target).unwrap();
        prop_assert!(target.contains(&f));
        prop_assert_eq!(m.first_point(f, &target).unwrap(), f);
        let hits: Vec<VertexId> = m.arc(t[0], f).unwrap().into_iter().filter(|v| target.contains(v)).collect();
        prop_assert_eq!(hits, vec![f]);
    }

    #[test]
    fn entourages_shrink_as_f_grows(seed in any::<u64>(), steps in 0usize..60, a in 1usize..5, b in 1usize..5) {
        let m = grown(0, seed, steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let small: BTreeSet<VertexId> = pick(&m, a, &mut rng).into_iter().collect();
        let mut large = small.clone();
        large.extend(pick(&m, b, &mut rng));
        let xy = pick(&m, 2, &mut rng);
        if m.entourage_related(xy[0], xy[1], &large).unwrap() {
            prop_assert!(m.entourage_related(xy[0], xy[1], &small).unwrap());
        }
    }

    #[test]
    fn realized_types_round_trip(s in 0usize..4, seed in any::<u64>(), steps in 0usize..40, p in 1usize..5) {
        let source = grown(s, seed, steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let tuple = pick(&source, p, &mut rng);
        let t = source.configuration_type(&tuple).unwrap();
        prop_assert!(validate(&t, source.signature()).is_valid());
        let mut target = DendriteModel::new(source.signature().clone(), seed.wrapping_add(1));
        let image = target.realize_type(&t).unwrap();
        target.check_invariants().unwrap();
        let back = target.configuration_type(&image).unwrap();
        prop_assert_eq!(canonical_code(&back).unwrap(), canonical_code(&t).unwrap());
    }

    #[test]
    fn models_replay_from_their_log(s in 0usize..4, seed in any::<u64>(), steps in 0usize..60) {
        let m = grown(s, seed, steps);
        let again = DendriteModel::replay(m.signature().clone(), m.seed(), m.log()).unwrap();
        prop_assert_eq!(&again, &m);
        prop_assert_eq!(DendriteModel::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn orders_from_ends_complete_to_themselves(s in 0usize..4, seed in any::<u64>(), steps in 0usize..30) {
        let m = grown(s, seed, steps);
        let ends = m.vertices_with_target(OrderLabel::END);
        let z = ends[seed as usize % ends.len()];
        let t = order_from_end(&m, z).unwrap();
        prop_assert!(is_semilinear(t.poset()));
        for x in m.vertex_ids() {
            for y in m.vertex_ids() {
                prop_assert_eq!(t.poset().leq(x, y), model_path(&m, z, y).contains(&x));
            }
        }
        let c = completion(&t).unwrap();
        prop_assert!(embedding_is_isomorphism(&t, &c));
        let json = serde_json::to_string(&t.poset().to_file()).unwrap();
        prop_assert_eq!(&Poset::from_json(&json).unwrap(), t.poset());
    }

    #[test]
    fn tripod_centres_exist_exactly_off_common_arcs(s in 0usize..4, seed in any::<u64>(), steps in 0usize..40) {
        let m = grown(s, seed, steps);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
        let ids: Vec<VertexId> = m.vertex_ids().collect();
        let t: Vec<VertexId> = ids.choose_multiple(&mut rng, 3).copied().collect();
        let w = stabilizer_witness(&m, t[0], t[1], t[2]).unwrap();
        prop_assert_eq!(w.is_some(), !common_arc(&m, t[0], t[1], t[2]).unwrap());
    }
}

#[test]
fn enumerated_types_are_valid_and_keyed_by_their_code() {
    for s in SIGS {
        let sig = Signature::parse(s).unwrap();
        for p in 1..=3 {
            for (code, tree) in enumerate_type_codes(p, &sig, false).unwrap() {
                assert!(validate(&tree, &sig).is_valid(), "{code}");
                assert_eq!(canonical_code(&tree).unwrap(), code);
            }
        }
    }
}
