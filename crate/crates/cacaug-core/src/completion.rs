//! Completing a matching to a full solution via the directed-cut cover.
//!
//! Every link contributes its two orientations; a cut counts as covered
//! only by an arc entering it. On these instances the fractional covering
//! LP over the uncovered cuts is integral, so an exact minimum arc
//! selection solves it; the undirected source links of the selected arcs
//! complete the matching. The arc count never exceeds
//! `|M_in|/2 + (|T| - 2|M|)`, which yields the solver guarantee
//! `|F| <= |H| + |H_in|/2` against every solution `H`.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::cactus::{covers, CactusError, CheckOutcome, Instance, Solution, TwoCut};
use crate::cover::{min_cost_cover, CoverInstance, CoverResult};
use crate::matching::{self, Matching};
use crate::{LinkId, Vertex};

/// Solver failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// Even the full link set does not cover every 2-cut.
    InfeasibleInstance,
    /// The matching pipeline needs a leaf-to-leaf+ instance.
    NotLeafToLeafPlus,
    Cactus(CactusError),
}

impl From<CactusError> for SolveError {
    fn from(e: CactusError) -> Self {
        SolveError::Cactus(e)
    }
}

impl core::fmt::Display for SolveError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SolveError::InfeasibleInstance => write!(f, "instance is infeasible"),
            SolveError::NotLeafToLeafPlus => write!(f, "instance is not leaf-to-leaf+"),
            SolveError::Cactus(e) => write!(f, "{e}"),
        }
    }
}

/// One orientation of a link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectedLink {
    pub tail: Vertex,
    pub head: Vertex,
    pub source_link: LinkId,
}

/// A directed covering problem: cuts to cover, the arcs (two per link), and
/// per cut the arcs entering it.
#[derive(Clone, Debug)]
pub struct CoverProblem {
    pub cuts: Vec<TwoCut>,
    pub arcs: Vec<DirectedLink>,
    pub incidence: Vec<Vec<usize>>,
}

impl CoverProblem {
    /// Builds the problem over all links of the instance against the given
    /// cuts. Arc `2k` is link `k` oriented `u -> v`, arc `2k + 1` the
    /// reverse.
    pub fn new(instance: &Instance, cuts: Vec<TwoCut>) -> Self {
        let mut arcs = Vec::with_capacity(2 * instance.links().len());
        for l in instance.links() {
            arcs.push(DirectedLink {
                tail: l.u,
                head: l.v,
                source_link: l.id,
            });
            arcs.push(DirectedLink {
                tail: l.v,
                head: l.u,
                source_link: l.id,
            });
        }
        let incidence = cuts
            .iter()
            .map(|cut| {
                arcs.iter()
                    .enumerate()
                    .filter(|(_, a)| {
                        cut.vertices.contains(a.head) && !cut.vertices.contains(a.tail)
                    })
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        CoverProblem {
            cuts,
            arcs,
            incidence,
        }
    }
}

/// A minimum arc selection covering every cut of a [`CoverProblem`].
#[derive(Clone, Debug)]
pub struct DirectedCover {
    /// Indices into the problem's arc list; the optimum of the covering LP.
    pub arc_indices: Vec<usize>,
    /// Distinct source links of the selected arcs, sorted. Both
    /// orientations of one link may be needed, so this can be smaller than
    /// the arc count.
    pub links: Vec<LinkId>,
}

impl DirectedCover {
    pub fn arc_count(&self) -> usize {
        self.arc_indices.len()
    }
}

/// Outcome of the directed cover computation.
#[derive(Clone, Debug)]
pub enum CoverOutcome {
    Cover(DirectedCover),
    /// A cut no arc enters.
    Infeasible { witness: TwoCut },
}

/// The 2-cuts no link of `chosen` crosses.
pub fn uncovered_cuts(instance: &Instance, chosen: &[LinkId]) -> Vec<TwoCut> {
    let links: Vec<_> = chosen.iter().map(|&id| instance.links()[id]).collect();
    instance
        .two_cuts()
        .into_iter()
        .filter(|cut| !links.iter().any(|l| covers(l, cut)))
        .collect()
}

/// Exact minimum-cardinality arc selection covering all cuts. By the
/// integrality of the directed covering LP this equals the fractional LP
/// optimum.
pub fn min_directed_cover(problem: &CoverProblem) -> CoverOutcome {
    let cut_count = problem.cuts.len();
    let coverage: Vec<BitSet> = (0..problem.arcs.len())
        .map(|a| {
            BitSet::from_iter(
                cut_count,
                (0..cut_count).filter(|&c| problem.incidence[c].contains(&a)),
            )
        })
        .collect();
    let inst = CoverInstance {
        cut_count,
        coverage,
        costs: alloc::vec![1; problem.arcs.len()],
    };
    match min_cost_cover(&inst) {
        CoverResult::Infeasible { witness_cut } => CoverOutcome::Infeasible {
            witness: problem.cuts[witness_cut].clone(),
        },
        CoverResult::Solved { items, .. } => {
            let mut links: Vec<LinkId> =
                items.iter().map(|&a| problem.arcs[a].source_link).collect();
            links.sort_unstable();
            links.dedup();
            CoverOutcome::Cover(DirectedCover {
                arc_indices: items,
                links,
            })
        }
    }
}

/// A completed matching run with its accounting.
#[derive(Clone, Debug)]
pub struct CompletionRun {
    pub matching: Matching,
    pub cover: DirectedCover,
    pub solution: Solution,
}

impl CompletionRun {
    /// `|M| +` LP arc count: the completion cost of the run.
    pub fn completion_cost(&self) -> usize {
        self.matching.size() + self.cover.arc_count()
    }
}

/// Completes an eligible matching to a feasible solution `F = M ∪ U` with
/// the arc count of `U` bounded by `|M_in|/2 + (|T| - 2|M|)`.
pub fn complete_matching(
    instance: &Instance,
    matching: &Matching,
) -> Result<CompletionRun, SolveError> {
    let cuts = uncovered_cuts(instance, &matching.link_ids);
    let problem = CoverProblem::new(instance, cuts);
    let cover = match min_directed_cover(&problem) {
        CoverOutcome::Cover(c) => c,
        CoverOutcome::Infeasible { .. } => return Err(SolveError::InfeasibleInstance),
    };

    let leaf_count = instance.leaves().count();
    assert!(
        2 * cover.arc_count() as i64
            <= matching.in_count as i64 + 2 * (leaf_count as i64 - 2 * matching.size() as i64),
        "completion exceeded the matching bound"
    );

    let mut ids = matching.link_ids.clone();
    ids.extend(cover.links.iter().copied());
    ids.sort_unstable();
    ids.dedup();
    let solution = match instance.check_solution(&ids)? {
        CheckOutcome::Feasible(s) => s,
        CheckOutcome::Infeasible { .. } => unreachable!("cover left a cut uncovered"),
    };
    Ok(CompletionRun {
        matching: matching.clone(),
        cover,
        solution,
    })
}

/// The matching-based solver: maximum-weight eligible matching, then the
/// directed-cut completion. The result satisfies
/// `|F| <= |H| + |H_in|/2` for every solution `H`.
pub fn run_matching_algorithm(instance: &Instance) -> Result<CompletionRun, SolveError> {
    if !instance.is_leaf_to_leaf_plus() {
        return Err(SolveError::NotLeafToLeafPlus);
    }
    ensure_feasible(instance)?;
    let matching = matching::max_weight_matching(instance);
    complete_matching(instance, &matching)
}

/// Baseline for comparison: complete a maximum-cardinality matching (bad
/// links included). Its completion cost `|M| +` arcs degrades toward twice
/// the optimum on the tower family.
pub fn run_naive_max_cardinality(instance: &Instance) -> Result<CompletionRun, SolveError> {
    ensure_feasible(instance)?;
    let matching = matching::max_cardinality_matching(instance);
    let cuts = uncovered_cuts(instance, &matching.link_ids);
    let problem = CoverProblem::new(instance, cuts);
    let cover = match min_directed_cover(&problem) {
        CoverOutcome::Cover(c) => c,
        CoverOutcome::Infeasible { .. } => return Err(SolveError::InfeasibleInstance),
    };
    let mut ids = matching.link_ids.clone();
    ids.extend(cover.links.iter().copied());
    ids.sort_unstable();
    ids.dedup();
    let solution = match instance.check_solution(&ids)? {
        CheckOutcome::Feasible(s) => s,
        CheckOutcome::Infeasible { .. } => unreachable!("cover left a cut uncovered"),
    };
    Ok(CompletionRun {
        matching,
        cover,
        solution,
    })
}

pub(crate) fn ensure_feasible(instance: &Instance) -> Result<(), SolveError> {
    let all: Vec<LinkId> = (0..instance.links().len()).collect();
    match instance.check_solution(&all)? {
        CheckOutcome::Feasible(_) => Ok(()),
        CheckOutcome::Infeasible { .. } => Err(SolveError::InfeasibleInstance),
    }
}
