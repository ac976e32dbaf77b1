//! Shared helpers for the integration suites: profile shorthands and a
//! rewiring helper that produces feasible instances with non-leaf link
//! endpoints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cacaug::gen::{gen_random, EndpointMode, RandomProfile};
use cacaug_core::cactus::{CheckOutcome, Instance};
use cacaug_core::LinkId;

pub fn leafy_profile(links: usize, plus: bool) -> RandomProfile {
    RandomProfile {
        n_min: 5,
        n_max: 12,
        k_cap: 0,
        link_count: links,
        endpoints: if plus {
            EndpointMode::LeafToLeafPlus
        } else {
            EndpointMode::LeafToLeaf
        },
        ensure_feasible: true,
    }
}

pub fn random_feasible(seed: u64, links: usize, plus: bool) -> Instance {
    gen_random(&leafy_profile(links, plus), seed)
        .unwrap()
        .to_instance()
        .unwrap()
}

/// Rewires some link endpoints to non-leaf vertices and patches coverage
/// back up with root links, producing feasible instances that are not
/// leaf-to-leaf.
pub fn random_with_nonleaf_endpoints(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let base = random_feasible(seed, 5, false);
    let leaves = base.leaves();
    let non_leaves: Vec<usize> = (0..base.vertex_count())
        .filter(|&v| !leaves.contains(v))
        .collect();
    let mut pairs: Vec<(usize, usize)> = base.links().iter().map(|l| (l.u, l.v)).collect();
    if !non_leaves.is_empty() {
        for _ in 0..2 {
            let i = rng.gen_range(0..pairs.len());
            let w = non_leaves[rng.gen_range(0..non_leaves.len())];
            let (u, v) = pairs[i];
            let rewired = if rng.gen_bool(0.5) { (w, v) } else { (u, w) };
            if rewired.0 != rewired.1 {
                pairs[i] = rewired;
            }
        }
    }
    let mut inst =
        Instance::new(base.cactus().clone(), &pairs, base.root()).expect("rewire stays valid");
    loop {
        let all: Vec<LinkId> = (0..inst.links().len()).collect();
        match inst.check_solution(&all).unwrap() {
            CheckOutcome::Feasible(_) => return inst,
            CheckOutcome::Infeasible { witness } => {
                let inside = witness.vertices.iter().next().unwrap();
                pairs.push((inside, inst.root()));
                inst = Instance::new(inst.cactus().clone(), &pairs, inst.root()).unwrap();
            }
        }
    }
}
