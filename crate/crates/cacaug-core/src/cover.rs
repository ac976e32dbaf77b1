//! Exact minimum-cost covering by branch and bound.
//!
//! Shared engine behind the directed-cut cover, the brute-force optimum
//! oracle and the per-subcactus solver: items (links or arcs) carry a cut
//! coverage bitset and an integer cost; the search branches on the
//! uncovered cut with the fewest remaining covering items and prunes with a
//! greedy disjoint-cut packing bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;

pub(crate) struct CoverInstance {
    pub cut_count: usize,
    /// Per item, the set of cuts it covers.
    pub coverage: Vec<BitSet>,
    pub costs: Vec<u64>,
}

pub(crate) enum CoverResult {
    Solved { cost: u64, items: Vec<usize> },
    /// Index of a cut no item covers.
    Infeasible { witness_cut: usize },
}

struct Search<'a> {
    inst: &'a CoverInstance,
    cut_items: Vec<Vec<usize>>,
    excluded: Vec<bool>,
    best_cost: u64,
    best_items: Vec<usize>,
    found: bool,
}

impl<'a> Search<'a> {
    fn new(inst: &'a CoverInstance) -> Result<Self, usize> {
        let mut cut_items = vec![Vec::new(); inst.cut_count];
        for (i, cov) in inst.coverage.iter().enumerate() {
            for c in cov.iter() {
                cut_items[c].push(i);
            }
        }
        if let Some(c) = cut_items.iter().position(Vec::is_empty) {
            return Err(c);
        }
        Ok(Search {
            inst,
            cut_items,
            excluded: vec![false; inst.coverage.len()],
            best_cost: u64::MAX,
            best_items: Vec::new(),
            found: false,
        })
    }

    /// Greedy packing of uncovered cuts with pairwise disjoint available
    /// item sets; each packed cut independently needs its cheapest item.
    fn lower_bound(&self, covered: &BitSet) -> u64 {
        let mut used = vec![false; self.inst.coverage.len()];
        let mut bound = 0u64;
        for c in 0..self.inst.cut_count {
            if covered.contains(c) {
                continue;
            }
            let avail = self.cut_items[c]
                .iter()
                .filter(|&&i| !self.excluded[i])
                .copied();
            let mut cheapest = u64::MAX;
            let mut disjoint = true;
            let mut items = Vec::new();
            for i in avail {
                if used[i] {
                    disjoint = false;
                }
                items.push(i);
                cheapest = cheapest.min(self.inst.costs[i]);
            }
            if disjoint && !items.is_empty() {
                for i in items {
                    used[i] = true;
                }
                bound += cheapest;
            }
        }
        bound
    }

    fn branch(&mut self, covered: &BitSet, chosen: &mut Vec<usize>, cost: u64) {
        if covered.count() == self.inst.cut_count {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best_items = chosen.clone();
                self.found = true;
            }
            return;
        }
        if cost.saturating_add(self.lower_bound(covered)) >= self.best_cost {
            return;
        }
        // Branch on the uncovered cut with the fewest available items.
        let mut target = usize::MAX;
        let mut target_avail = usize::MAX;
        for c in 0..self.inst.cut_count {
            if covered.contains(c) {
                continue;
            }
            let avail = self.cut_items[c]
                .iter()
                .filter(|&&i| !self.excluded[i])
                .count();
            if avail < target_avail {
                target_avail = avail;
                target = c;
            }
        }
        if target_avail == 0 {
            return;
        }
        let candidates: Vec<usize> = self.cut_items[target]
            .iter()
            .filter(|&&i| !self.excluded[i])
            .copied()
            .collect();
        // Alternatives for this cut exclude the items tried before them, so
        // the branches partition the remaining space.
        for &i in &candidates {
            let mut next = covered.clone();
            next.union_with(&self.inst.coverage[i]);
            chosen.push(i);
            self.branch(&next, chosen, cost + self.inst.costs[i]);
            chosen.pop();
            self.excluded[i] = true;
        }
        for &i in &candidates {
            self.excluded[i] = false;
        }
    }
}

/// Exact minimum-cost cover; deterministic for a fixed item order.
pub(crate) fn min_cost_cover(inst: &CoverInstance) -> CoverResult {
    match Search::new(inst) {
        Err(witness_cut) => CoverResult::Infeasible { witness_cut },
        Ok(mut search) => {
            let covered = BitSet::new(inst.cut_count);
            let mut chosen = Vec::new();
            search.branch(&covered, &mut chosen, 0);
            debug_assert!(search.found);
            let mut items = search.best_items;
            items.sort_unstable();
            CoverResult::Solved {
                cost: search.best_cost,
                items,
            }
        }
    }
}

/// Enumerates every feasible item set of size exactly `size` (for unit
/// costs and `size` the optimum, these are all optimal covers). Returns
/// `None` when more than `cap` sets exist.
pub(crate) fn enumerate_covers_of_size(
    inst: &CoverInstance,
    size: usize,
    cap: usize,
) -> Option<Vec<Vec<usize>>> {
    fn packing_bound(
        inst: &CoverInstance,
        cut_items: &[Vec<usize>],
        covered: &BitSet,
        first: usize,
    ) -> usize {
        let mut used = vec![false; inst.coverage.len()];
        let mut bound = 0;
        for (c, items) in cut_items.iter().enumerate() {
            if covered.contains(c) {
                continue;
            }
            let avail: Vec<usize> = items.iter().filter(|&&i| i >= first).copied().collect();
            if avail.is_empty() {
                return usize::MAX;
            }
            if avail.iter().all(|&i| !used[i]) {
                for &i in &avail {
                    used[i] = true;
                }
                bound += 1;
            }
        }
        bound
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        inst: &CoverInstance,
        cut_items: &[Vec<usize>],
        next: usize,
        covered: &BitSet,
        chosen: &mut Vec<usize>,
        size: usize,
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if chosen.len() == size {
            if covered.count() == inst.cut_count {
                if out.len() == cap {
                    return false;
                }
                out.push(chosen.clone());
            }
            return true;
        }
        if next == inst.coverage.len() {
            return true;
        }
        let slots = size - chosen.len();
        if inst.coverage.len() - next < slots {
            return true;
        }
        let need = packing_bound(inst, cut_items, covered, next);
        if need > slots {
            return true;
        }
        // Include `next`.
        let mut with = covered.clone();
        with.union_with(&inst.coverage[next]);
        chosen.push(next);
        if !rec(inst, cut_items, next + 1, &with, chosen, size, cap, out) {
            return false;
        }
        chosen.pop();
        // Exclude `next`.
        rec(inst, cut_items, next + 1, covered, chosen, size, cap, out)
    }

    let mut cut_items = vec![Vec::new(); inst.cut_count];
    for (i, cov) in inst.coverage.iter().enumerate() {
        for c in cov.iter() {
            cut_items[c].push(i);
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let covered = BitSet::new(inst.cut_count);
    if rec(inst, &cut_items, 0, &covered, &mut chosen, size, cap, &mut out) {
        Some(out)
    } else {
        None
    }
}
