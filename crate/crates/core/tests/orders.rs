mod common;

use dendrite::dendrite_model::DendriteModel;
use dendrite::labelled_trees::{OrderLabel, Signature};
use dendrite::semilinear::{
    check_meet_complete, completion, full_down_chains_by_enumeration, reconstruct_from_dense, topology_and_separation,
    Poset, SemiLinearOrder,
};

fn vee() -> SemiLinearOrder {
    SemiLinearOrder::new(Poset::new([0, 1, 2], [(0, 1), (0, 2)]).unwrap()).unwrap()
}

#[test]
fn vee_completes_to_its_principal_down_sets() {
    let t = vee();
    let mut by_subsets = full_down_chains_by_enumeration(t.poset());
    by_subsets.sort();
    assert_eq!(by_subsets, vec![vec![0], vec![0, 1], vec![0, 2]]);
    let c = completion(&t).unwrap();
    // the whole completion has infimum {0}
    let q = c.order.poset();
    let lower: Vec<u32> = q
        .elements()
        .iter()
        .copied()
        .filter(|&l| q.elements().iter().all(|&e| q.leq(l, e)))
        .collect();
    assert_eq!(lower.len(), 1);
    assert_eq!(c.chains[lower[0] as usize], vec![0]);
    assert!(check_meet_complete(&c).holds);
}

#[test]
fn completion_has_a_unique_minimum() {
    for n in 1..=5 {
        for parent in common::all_rooted_tree_orders(n) {
            let root = parent.iter().position(Option::is_none).unwrap() as u32;
            let leq = parent.iter().enumerate().filter_map(|(i, p)| p.map(|p| (p, i as u32)));
            let t = SemiLinearOrder::new(Poset::new(0..n as u32, leq).unwrap()).unwrap();
            let c = completion(&t).unwrap();
            let q = c.order.poset();
            let minima: Vec<u32> = q
                .elements()
                .iter()
                .copied()
                .filter(|&m| q.elements().iter().all(|&e| q.leq(m, e)))
                .collect();
            assert_eq!(minima.len(), 1);
            assert_eq!(c.chains[minima[0] as usize], vec![root]);
        }
    }
}

#[test]
fn order_three_points_are_dense_enough() {
    let sig = Signature::parse("3").unwrap();
    for seed in 0..4 {
        let mut m = DendriteModel::new(sig.clone(), seed);
        m.saturate(80).unwrap();
        let z = m.vertices_with_target(OrderLabel::END)[0];
        let report = reconstruct_from_dense(&mut m, z, &[OrderLabel::Finite(3)], 2).unwrap();
        assert!(report.passed(), "seed {seed}: {:?}", report.failures);
        assert!(report.checked > 80);
    }
}

#[test]
fn star_leaves_are_separated_by_the_centre() {
    let mut m = DendriteModel::new(Signature::parse("3").unwrap(), 0);
    let report = topology_and_separation(&mut m, 1).unwrap();
    assert!(report.passed());
    let leaves: Vec<_> = report
        .separations
        .iter()
        .filter(|s| s.x != 0 && s.y != 0 && s.x != 1 && s.y != 1)
        .collect();
    assert_eq!(leaves.len(), 1);
    assert_eq!(leaves[0].separator, 0);
    // adjacent pairs needed a fresh regular point
    let inserted = report.separations.iter().filter(|s| s.separator >= 4).count();
    assert!(inserted > 0);
    assert!(report
        .separations
        .iter()
        .filter(|s| s.separator >= 4)
        .all(|s| m.target(s.separator) == OrderLabel::REGULAR));
}
