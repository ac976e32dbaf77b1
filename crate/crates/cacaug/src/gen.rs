//! Instance generators: the tower family and seeded random instances.
//!
//! Everything is deterministic under the seed; generation retries with
//! fresh draws when a structural constraint (width cap, endpoint pool)
//! fails and gives up with [`GenError::GenerationFailed`] after a bounded
//! number of attempts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cacaug_core::cactus::{CheckOutcome, Instance};
use cacaug_core::{BitSet, LinkId};

use crate::formats::{InstanceFile, InstanceKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    /// No instance satisfying the profile was found within the retry budget.
    GenerationFailed(String),
}

impl std::fmt::Display for GenError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenError::GenerationFailed(msg) => write!(f, "generation failed: {msg}"),
        }
    }
}

impl std::error::Error for GenError {}

/// The tower family: `m` towers in a row of doubled tree edges. Tower `j`
/// has a top vertex `j` (vertex 0 is the root), a middle vertex `m + j`,
/// and two leaves `2m + 2j` and `2m + 2j + 1`. The links are the `m`
/// within-tower leaf pairs followed by the `m - 1` chain links joining
/// consecutive towers; the chain links together with the two outer pairs
/// form the natural 7-link optimum at `m = 6`.
pub fn gen_fig3(m: usize) -> InstanceFile {
    assert!(m >= 2, "the tower family needs at least two towers");
    let a = |j: usize| 2 * m + 2 * j;
    let b = |j: usize| 2 * m + 2 * j + 1;
    let mut cycles = Vec::new();
    for j in 0..m - 1 {
        cycles.push(vec![j, j + 1]);
    }
    for j in 0..m {
        cycles.push(vec![j, m + j]);
    }
    for j in 0..m {
        cycles.push(vec![m + j, a(j)]);
        cycles.push(vec![m + j, b(j)]);
    }
    let mut links = Vec::new();
    for j in 0..m {
        links.push([a(j), b(j)]);
    }
    for j in 0..m - 1 {
        links.push([b(j), a(j + 1)]);
    }
    InstanceFile {
        kind: InstanceKind::Cacap,
        n: 4 * m,
        cycles,
        edges: Vec::new(),
        root: Some(0),
        links,
    }
}

/// Which vertices may carry link endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointMode {
    LeafToLeaf,
    LeafToLeafPlus,
}

/// Profile for the random generators.
#[derive(Clone, Debug)]
pub struct RandomProfile {
    pub n_min: usize,
    pub n_max: usize,
    /// Maximum leaves per component of `G - r`; 0 disables the cap.
    pub k_cap: usize,
    pub link_count: usize,
    pub endpoints: EndpointMode,
    pub ensure_feasible: bool,
}

impl Default for RandomProfile {
    fn default() -> Self {
        RandomProfile {
            n_min: 6,
            n_max: 12,
            k_cap: 0,
            link_count: 6,
            endpoints: EndpointMode::LeafToLeaf,
            ensure_feasible: true,
        }
    }
}

const ATTEMPTS: usize = 200;

/// A random cactus instance matching the profile, deterministic under the
/// seed.
pub fn gen_random(profile: &RandomProfile, seed: u64) -> Result<InstanceFile, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let n_target = rng.gen_range(profile.n_min..=profile.n_max.max(profile.n_min));
        let cycles = random_cactus_cycles(&mut rng, n_target);
        let n = cycle_vertex_count(&cycles);
        if let Some(file) = try_finish(
            &mut rng,
            profile,
            InstanceFile {
                kind: InstanceKind::Cacap,
                n,
                cycles,
                edges: Vec::new(),
                root: Some(0),
                links: Vec::new(),
            },
        ) {
            return Ok(file);
        }
    }
    Err(GenError::GenerationFailed(format!(
        "no instance matched the profile after {ATTEMPTS} attempts"
    )))
}

/// A random tree instance (emitted with `kind = tap`), deterministic under
/// the seed.
pub fn gen_random_tap(profile: &RandomProfile, seed: u64) -> Result<InstanceFile, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(profile.n_min.max(2)..=profile.n_max.max(profile.n_min).max(2));
        let edges: Vec<[usize; 2]> = (1..n)
            .map(|v| [rng.gen_range(0..v), v])
            .collect();
        if let Some(file) = try_finish(
            &mut rng,
            profile,
            InstanceFile {
                kind: InstanceKind::Tap,
                n,
                cycles: Vec::new(),
                edges,
                root: Some(0),
                links: Vec::new(),
            },
        ) {
            return Ok(file);
        }
    }
    Err(GenError::GenerationFailed(format!(
        "no tree instance matched the profile after {ATTEMPTS} attempts"
    )))
}

/// Grows a cactus by attaching random cycles (length 2 to 4) at random
/// existing vertices until the vertex target is reached.
fn random_cactus_cycles(rng: &mut ChaCha8Rng, n_target: usize) -> Vec<Vec<usize>> {
    let mut cycles = Vec::new();
    let mut n = 1;
    while n < n_target {
        let attach = rng.gen_range(0..n);
        let len = rng.gen_range(2..=4usize).min(n_target - n + 1);
        if len < 2 {
            break;
        }
        let mut cycle = vec![attach];
        for _ in 1..len {
            cycle.push(n);
            n += 1;
        }
        cycles.push(cycle);
    }
    cycles
}

fn cycle_vertex_count(cycles: &[Vec<usize>]) -> usize {
    cycles
        .iter()
        .flat_map(|c| c.iter())
        .max()
        .map_or(1, |&m| m + 1)
}

/// Draws links, enforces the width cap and feasibility, and returns the
/// finished file; `None` when this attempt cannot satisfy the profile.
fn try_finish(
    rng: &mut ChaCha8Rng,
    profile: &RandomProfile,
    mut file: InstanceFile,
) -> Option<InstanceFile> {
    let base = file.to_instance().ok()?;
    if profile.k_cap > 0 && base.k_wideness() > profile.k_cap {
        return None;
    }
    let leaves = base.leaves();
    let mut pool: Vec<usize> = leaves.iter().collect();
    if profile.endpoints == EndpointMode::LeafToLeafPlus && !leaves.contains(base.root()) {
        pool.push(base.root());
        pool.sort_unstable();
    }
    if pool.len() < 2 {
        return None;
    }

    let mut links: Vec<[usize; 2]> = Vec::new();
    for _ in 0..profile.link_count {
        for _try in 0..20 {
            let x = pool[rng.gen_range(0..pool.len())];
            let y = pool[rng.gen_range(0..pool.len())];
            if x == y {
                continue;
            }
            let pair = [x.min(y), x.max(y)];
            if links.contains(&pair) {
                continue;
            }
            links.push(pair);
            break;
        }
    }
    file.links = links;

    if profile.ensure_feasible {
        make_feasible(profile, &mut file)?;
    }
    let done = file.to_instance().ok()?;
    match profile.endpoints {
        EndpointMode::LeafToLeaf if !done.is_leaf_to_leaf() => return None,
        EndpointMode::LeafToLeafPlus if !done.is_leaf_to_leaf_plus() => return None,
        _ => {}
    }
    Some(file)
}

/// Adds links until every 2-cut is covered: each round picks the first
/// uncovered cut and joins its smallest leaf to the root (plus mode) or to
/// the smallest leaf outside the cut.
fn make_feasible(profile: &RandomProfile, file: &mut InstanceFile) -> Option<()> {
    loop {
        let inst = file.to_instance().ok()?;
        let all: Vec<LinkId> = (0..inst.links().len()).collect();
        let witness = match inst.check_solution(&all).ok()? {
            CheckOutcome::Feasible(_) => return Some(()),
            CheckOutcome::Infeasible { witness } => witness,
        };
        let leaves = inst.leaves();
        let inside = witness
            .vertices
            .iter()
            .find(|&v| leaves.contains(v))?;
        let partner = match profile.endpoints {
            EndpointMode::LeafToLeafPlus => inst.root(),
            EndpointMode::LeafToLeaf => outside_leaf(&inst, &witness.vertices, &leaves)?,
        };
        let pair = [inside.min(partner), inside.max(partner)];
        if file.links.contains(&pair) {
            // The cut separates the pair's endpoints, so a present link
            // would already cover it.
            return None;
        }
        file.links.push(pair);
    }
}

fn outside_leaf(inst: &Instance, cut: &BitSet, leaves: &BitSet) -> Option<usize> {
    (0..inst.vertex_count()).find(|&v| leaves.contains(v) && !cut.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig3_shape() {
        let file = gen_fig3(6);
        assert_eq!(file.n, 24);
        assert_eq!(file.cycles.len(), 23);
        assert_eq!(file.links.len(), 11);
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.leaves().count(), 12);
        assert!(inst.is_leaf_to_leaf());
        // One cut per doubled edge.
        assert_eq!(inst.two_cuts().len(), 23);
    }

    #[test]
    fn fig3_smallest_member() {
        let file = gen_fig3(2);
        let inst = file.to_instance().unwrap();
        assert!(inst.is_leaf_to_leaf());
        let all: Vec<usize> = (0..inst.links().len()).collect();
        assert!(inst.check_solution(&all).unwrap().is_feasible());
    }

    #[test]
    fn random_is_deterministic() {
        let profile = RandomProfile::default();
        let a = gen_random(&profile, 42).unwrap();
        let b = gen_random(&profile, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.serialize(), b.serialize());
        let c = gen_random(&profile, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_respects_profile() {
        let profile = RandomProfile {
            n_min: 8,
            n_max: 14,
            k_cap: 4,
            link_count: 5,
            endpoints: EndpointMode::LeafToLeaf,
            ensure_feasible: true,
        };
        for seed in 0..30 {
            let file = gen_random(&profile, seed).unwrap();
            let inst = file.to_instance().unwrap();
            assert!(inst.k_wideness() <= 4, "seed {seed}");
            assert!(inst.is_leaf_to_leaf(), "seed {seed}");
            let all: Vec<usize> = (0..inst.links().len()).collect();
            assert!(inst.check_solution(&all).unwrap().is_feasible(), "seed {seed}");
        }
    }

    #[test]
    fn random_tap_converts() {
        let profile = RandomProfile {
            endpoints: EndpointMode::LeafToLeafPlus,
            ..RandomProfile::default()
        };
        let file = gen_random_tap(&profile, 7).unwrap();
        assert_eq!(file.kind, InstanceKind::Tap);
        let inst = file.to_instance().unwrap();
        assert!(inst.is_leaf_to_leaf_plus());
        let all: Vec<usize> = (0..inst.links().len()).collect();
        assert!(inst.check_solution(&all).unwrap().is_feasible());
    }
}
