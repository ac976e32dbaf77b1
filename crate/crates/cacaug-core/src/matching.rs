//! Bad-link detection and the maximum-weight leaf matching.
//!
//! A link is *bad* when some 2-cut `C` has all of its covering-link leaf
//! endpoints inside `C` confined to that link's own endpoints; matchings
//! containing bad links cannot be completed cheaply, so they are filtered
//! out before matching. The matching maximizes weight 2 per cross-link and
//! 1 per in-link, which is the argmax-equivalent integer scaling of the
//! weights 1 and 1/2.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::blossom;
use crate::cactus::{covers, Instance, LinkClass, TwoCut};
use crate::{LinkId, Vertex};

/// Scaled matching weight of a link: 2 for cross, 1 for in.
pub fn scaled_weight(instance: &Instance, id: LinkId) -> i64 {
    match instance.classify_link(&instance.links()[id]) {
        LinkClass::Cross => 2,
        LinkClass::In => 1,
    }
}

/// A matching over the leaves: pairwise vertex-disjoint eligible links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub link_ids: Vec<LinkId>,
    pub covered_leaves: BitSet,
    pub in_count: usize,
    pub cross_count: usize,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.link_ids.len()
    }

    /// 2 * cross_count + in_count.
    pub fn scaled_weight(&self) -> i64 {
        2 * self.cross_count as i64 + self.in_count as i64
    }

    /// Twice the completion objective `|M| + |M_in|/2 + (|T| - 2|M|)`,
    /// kept doubled to stay integral.
    pub fn objective_x2(&self, leaf_count: usize) -> i64 {
        2 * self.size() as i64 + self.in_count as i64
            + 2 * (leaf_count as i64 - 2 * self.size() as i64)
    }
}

/// The leaves of `cut` incident to at least one link covering `cut`.
pub fn cut_terminal_set(instance: &Instance, cut: &TwoCut) -> BitSet {
    let leaves = instance.leaves();
    let mut set = BitSet::new(instance.vertex_count());
    for l in instance.links() {
        if !covers(l, cut) {
            continue;
        }
        for end in [l.u, l.v] {
            if cut.vertices.contains(end) && leaves.contains(end) {
                set.insert(end);
            }
        }
    }
    set
}

/// A bad link together with a witnessing cut.
#[derive(Clone, Debug)]
pub struct BadLink {
    pub id: LinkId,
    pub witness: TwoCut,
}

/// All bad links: `{u, v}` is bad when some cut `C` satisfies
/// `T_C ⊆ {u, v} ⊆ C`, with `T_C` the terminal set of `C`.
pub fn bad_links(instance: &Instance) -> Vec<BadLink> {
    let cuts = instance.two_cuts();
    let terminal_sets: Vec<BitSet> = cuts.iter().map(|c| cut_terminal_set(instance, c)).collect();
    let mut out = Vec::new();
    for l in instance.links() {
        let found = cuts.iter().zip(&terminal_sets).find(|(cut, t_c)| {
            cut.vertices.contains(l.u)
                && cut.vertices.contains(l.v)
                && t_c.iter().all(|t| t == l.u || t == l.v)
        });
        if let Some((cut, _)) = found {
            out.push(BadLink {
                id: l.id,
                witness: cut.clone(),
            });
        }
    }
    out
}

/// Links whose endpoints are both leaves and which are not bad.
pub fn eligible_links(instance: &Instance) -> Vec<LinkId> {
    let leaves = instance.leaves();
    let bad: BitSet = BitSet::from_iter(
        instance.links().len().max(1),
        bad_links(instance).iter().map(|b| b.id),
    );
    instance
        .links()
        .iter()
        .filter(|l| leaves.contains(l.u) && leaves.contains(l.v) && !bad.contains(l.id))
        .map(|l| l.id)
        .collect()
}

/// Maximum-weight matching over a set of candidate links with the given
/// scaled weights; parallel candidates on one vertex pair keep only the
/// heaviest (lowest id on ties). Ties between maximum-weight matchings are
/// broken toward the lexicographically smallest link-id set.
fn best_matching(instance: &Instance, candidates: &[LinkId], max_cardinality: bool) -> Vec<LinkId> {
    use alloc::collections::BTreeMap;
    let n = instance.vertex_count();
    let mut by_pair: BTreeMap<(Vertex, Vertex), LinkId> = BTreeMap::new();
    for &id in candidates {
        let l = &instance.links()[id];
        let key = (l.u, l.v);
        match by_pair.get(&key) {
            Some(&old) if scaled_weight(instance, old) >= scaled_weight(instance, id) => {}
            _ => {
                by_pair.insert(key, id);
            }
        }
    }

    let solve = |forced_out: &BitSet, forced_vertices: &BitSet| -> (i64, Vec<LinkId>) {
        let edges: Vec<(usize, usize, i64)> = by_pair
            .values()
            .filter(|&&id| !forced_out.contains(id))
            .filter(|&&id| {
                let l = &instance.links()[id];
                !forced_vertices.contains(l.u) && !forced_vertices.contains(l.v)
            })
            .map(|&id| {
                let l = &instance.links()[id];
                (l.u, l.v, scaled_weight(instance, id))
            })
            .collect();
        let mate = blossom::max_weight_matching(n, &edges, max_cardinality);
        let mut ids = Vec::new();
        let mut weight = 0;
        for (u, v, w) in &edges {
            if mate[*u] == *v {
                let l = instance.links()[by_pair[&(*u.min(v), *u.max(v))]];
                ids.push(l.id);
                weight += w;
            }
        }
        ids.sort_unstable();
        (weight, ids)
    };

    let none_links = BitSet::new(instance.links().len().max(1));
    let none_vertices = BitSet::new(n);
    let (best_weight, first) = solve(&none_links, &none_vertices);
    if max_cardinality {
        // Cardinality mode is used for the reference baseline only; the
        // blossom tie-break is already deterministic there.
        return first;
    }

    // Lexicographic refinement: walk ids in order, keeping an id exactly
    // when some maximum-weight matching extends the kept set with it.
    let mut kept: Vec<LinkId> = Vec::new();
    let mut kept_weight = 0i64;
    let mut kept_vertices = BitSet::new(n);
    let mut rejected = BitSet::new(instance.links().len().max(1));
    let mut ordered: Vec<LinkId> = by_pair.values().copied().collect();
    ordered.sort_unstable();
    for id in ordered {
        let l = &instance.links()[id];
        if kept_vertices.contains(l.u) || kept_vertices.contains(l.v) {
            rejected.insert(id);
            continue;
        }
        let mut vertices = kept_vertices.clone();
        vertices.insert(l.u);
        vertices.insert(l.v);
        let mut out = rejected.clone();
        out.insert(id);
        let (rest, _) = solve(&out, &vertices);
        if kept_weight + scaled_weight(instance, id) + rest == best_weight {
            kept.push(id);
            kept_weight += scaled_weight(instance, id);
            kept_vertices = vertices;
        } else {
            rejected.insert(id);
        }
    }
    debug_assert_eq!(kept_weight, best_weight);
    kept
}

/// Step (1) of the matching-based solver: a maximum-weight matching over
/// the eligible links, weights 2 per cross-link and 1 per in-link.
pub fn max_weight_matching(instance: &Instance) -> Matching {
    let candidates = eligible_links(instance);
    let ids = best_matching(instance, &candidates, false);
    build_matching(instance, ids)
}

/// Maximum-cardinality matching over all leaf-to-leaf links, bad ones
/// included; the baseline whose completion degrades on the tower family.
pub fn max_cardinality_matching(instance: &Instance) -> Matching {
    let leaves = instance.leaves();
    let candidates: Vec<LinkId> = instance
        .links()
        .iter()
        .filter(|l| leaves.contains(l.u) && leaves.contains(l.v))
        .map(|l| l.id)
        .collect();
    let ids = best_matching(instance, &candidates, true);
    build_matching(instance, ids)
}

fn build_matching(instance: &Instance, ids: Vec<LinkId>) -> Matching {
    let mut covered = BitSet::new(instance.vertex_count());
    let mut in_count = 0;
    let mut cross_count = 0;
    for &id in &ids {
        let l = &instance.links()[id];
        debug_assert!(!covered.contains(l.u) && !covered.contains(l.v));
        covered.insert(l.u);
        covered.insert(l.v);
        match instance.classify_link(l) {
            LinkClass::In => in_count += 1,
            LinkClass::Cross => cross_count += 1,
        }
    }
    Matching {
        link_ids: ids,
        covered_leaves: covered,
        in_count,
        cross_count,
    }
}

/// Exhaustive maximum-weight matching over the eligible links; reference
/// implementation for small instances (use well below ~20 eligible links).
pub fn exhaustive_max_weight_matching(instance: &Instance) -> Matching {
    let candidates = eligible_links(instance);
    let mut best: Option<(i64, Vec<LinkId>)> = None;
    let m = candidates.len();
    assert!(m < 26, "exhaustive matcher is for small instances");
    for mask in 0..1u64 << m {
        let mut used = BitSet::new(instance.vertex_count());
        let mut ok = true;
        let mut weight = 0;
        let mut ids = Vec::new();
        for (pos, &id) in candidates.iter().enumerate() {
            if mask >> pos & 1 == 0 {
                continue;
            }
            let l = &instance.links()[id];
            if used.contains(l.u) || used.contains(l.v) {
                ok = false;
                break;
            }
            used.insert(l.u);
            used.insert(l.v);
            weight += scaled_weight(instance, id);
            ids.push(id);
        }
        if !ok {
            continue;
        }
        let better = match &best {
            None => true,
            Some((w, b)) => weight > *w || (weight == *w && ids < *b),
        };
        if better {
            best = Some((weight, ids));
        }
    }
    build_matching(instance, best.map(|(_, ids)| ids).unwrap_or_default())
}
