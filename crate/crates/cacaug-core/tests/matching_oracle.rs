//! The weighted matching path against the exhaustive oracle on small
//! two-level instances, which mix in-links and cross-links.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cacaug_core::cactus::{Cactus, Instance, LinkClass};
use cacaug_core::matching::{
    bad_links, exhaustive_max_weight_matching, max_cardinality_matching, max_weight_matching,
};

/// Root 0 with `mids` doubled-edge subtrees, each carrying a few leaves.
/// Links between leaves of one subtree are in-links, links across subtrees
/// are cross-links.
fn two_level_instance(rng: &mut ChaCha8Rng, link_prob: f64) -> Instance {
    let mids = rng.gen_range(2..=3usize);
    let mut cycles = Vec::new();
    let mut leaves = Vec::new();
    let mut next = 1 + mids;
    for mid in 1..=mids {
        cycles.push(vec![0, mid]);
        for _ in 0..rng.gen_range(1..=3usize) {
            cycles.push(vec![mid, next]);
            leaves.push(next);
            next += 1;
        }
    }
    let mut links = Vec::new();
    for i in 0..leaves.len() {
        for j in i + 1..leaves.len() {
            if rng.gen_bool(link_prob) {
                links.push((leaves[i], leaves[j]));
            }
        }
    }
    let cactus = Cactus::new(next, cycles).unwrap();
    Instance::new(cactus, &links, 0).unwrap()
}

#[test]
fn mixed_classes_appear() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut saw_in = false;
    let mut saw_cross = false;
    for _ in 0..50 {
        let inst = two_level_instance(&mut rng, 0.6);
        for l in inst.links() {
            match inst.classify_link(l) {
                LinkClass::In => saw_in = true,
                LinkClass::Cross => saw_cross = true,
            }
        }
    }
    assert!(saw_in && saw_cross);
}

#[test]
fn random_instances_match_exhaustive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nontrivial = 0;
    for round in 0..400 {
        let inst = two_level_instance(&mut rng, 0.45);
        if inst.links().len() > 12 {
            continue;
        }
        let fast = max_weight_matching(&inst);
        let slow = exhaustive_max_weight_matching(&inst);
        assert_eq!(
            fast.scaled_weight(),
            slow.scaled_weight(),
            "round {round}: links {:?}",
            inst.links()
        );
        // Same tie-breaking rule on both sides.
        assert_eq!(fast.link_ids, slow.link_ids, "round {round}");
        if fast.size() > 1 {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 50, "sweep was too easy: {nontrivial}");
}

#[test]
fn bad_link_witnesses_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let inst = two_level_instance(&mut rng, 0.5);
        for bad in bad_links(&inst) {
            let l = &inst.links()[bad.id];
            assert!(bad.witness.vertices.contains(l.u));
            assert!(bad.witness.vertices.contains(l.v));
            let terms = cacaug_core::matching::cut_terminal_set(&inst, &bad.witness);
            assert!(terms.iter().all(|t| t == l.u || t == l.v));
        }
    }
}

#[test]
fn max_cardinality_never_smaller() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let inst = two_level_instance(&mut rng, 0.4);
        if inst.links().len() > 12 {
            continue;
        }
        let weight = max_weight_matching(&inst);
        let card = max_cardinality_matching(&inst);
        assert!(card.size() >= weight.size());
    }
}

#[test]
fn matching_objective_identity() {
    // |M| + |M_in|/2 + (|T| - 2|M|) = |T| - scaled_weight(M) / 2, checked
    // doubled to stay in integers.
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    for _ in 0..200 {
        let inst = two_level_instance(&mut rng, 0.5);
        if inst.links().len() > 12 {
            continue;
        }
        let m = max_weight_matching(&inst);
        let t = inst.leaves().count() as i64;
        assert_eq!(m.objective_x2(t as usize), 2 * t - m.scaled_weight());
    }
}
