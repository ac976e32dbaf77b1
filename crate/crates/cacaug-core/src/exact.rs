//! Exact solvers: the brute-force optimum oracle, the per-subcactus solver
//! for narrow instances, and the better-of-two combined solver.
//!
//! The subcactus solver solves each principal subcactus optimally and
//! returns the union, which costs at most `|H| + |H_cross|` for any
//! solution `H`; combined with the matching-based bound
//! `|H| + |H_in|/2`, taking the smaller of the two results stays within
//! 4/3 of the optimum.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::cactus::{covers, CactusError, CheckOutcome, Instance, LinkClass, Solution};
use crate::completion::{self, SolveError};
use crate::cover::{enumerate_covers_of_size, min_cost_cover, CoverInstance, CoverResult};
use crate::LinkId;

/// Default cap on leaves per principal subcactus for the exact subcactus
/// solver.
pub const DEFAULT_SUBCACTUS_LEAF_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// The instance has more links than the search budget allows.
    BudgetExceeded { links: usize, budget: usize },
    /// Some principal subcactus has more leaves than the configured cap.
    SubcactusTooLarge { leaves: usize, cap: usize },
    InfeasibleInstance,
    NotLeafToLeafPlus,
    Cactus(CactusError),
}

impl From<CactusError> for ExactError {
    fn from(e: CactusError) -> Self {
        ExactError::Cactus(e)
    }
}

impl From<SolveError> for ExactError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InfeasibleInstance => ExactError::InfeasibleInstance,
            SolveError::NotLeafToLeafPlus => ExactError::NotLeafToLeafPlus,
            SolveError::Cactus(c) => ExactError::Cactus(c),
        }
    }
}

impl core::fmt::Display for ExactError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExactError::BudgetExceeded { links, budget } => {
                write!(f, "{links} links exceed the search budget of {budget}")
            }
            ExactError::SubcactusTooLarge { leaves, cap } => {
                write!(f, "subcactus with {leaves} leaves exceeds the cap of {cap}")
            }
            ExactError::InfeasibleInstance => write!(f, "instance is infeasible"),
            ExactError::NotLeafToLeafPlus => write!(f, "instance is not leaf-to-leaf+"),
            ExactError::Cactus(e) => write!(f, "{e}"),
        }
    }
}

/// Certificate produced by the brute-force oracle: the optimum with one
/// witness, plus the two auxiliary minima the approximation guarantees are
/// measured against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptCertificate {
    pub opt_value: usize,
    pub optimal: Vec<LinkId>,
    /// `min over solutions H of 2|H| + |H_in|`, i.e. twice the
    /// matching-side reference `|H| + |H_in|/2`, kept doubled to stay
    /// integral.
    pub min_two_size_plus_in: u64,
    /// `min over solutions H of |H| + |H_cross|`, the subcactus-side
    /// reference.
    pub min_size_plus_cross: u64,
}

fn link_cover_instance(instance: &Instance, costs: Vec<u64>) -> CoverInstance {
    let cuts = instance.two_cuts();
    let coverage = instance
        .links()
        .iter()
        .map(|l| {
            BitSet::from_iter(
                cuts.len(),
                cuts.iter()
                    .enumerate()
                    .filter(|(_, c)| covers(l, c))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    CoverInstance {
        cut_count: cuts.len(),
        coverage,
        costs,
    }
}

/// Exact optimum by pruned subset search, with the auxiliary minima used by
/// the guarantee checks. `link_budget` caps the number of links the search
/// will accept.
pub fn brute_force_opt(
    instance: &Instance,
    link_budget: usize,
) -> Result<OptCertificate, ExactError> {
    let m = instance.links().len();
    if m > link_budget {
        return Err(ExactError::BudgetExceeded {
            links: m,
            budget: link_budget,
        });
    }
    let unit = link_cover_instance(instance, alloc::vec![1; m]);
    let (opt_value, optimal) = match min_cost_cover(&unit) {
        CoverResult::Infeasible { .. } => return Err(ExactError::InfeasibleInstance),
        CoverResult::Solved { cost, items } => (cost as usize, items),
    };

    let class_cost = |in_cost: u64, cross_cost: u64| -> Vec<u64> {
        instance
            .links()
            .iter()
            .map(|l| match instance.classify_link(l) {
                LinkClass::In => in_cost,
                LinkClass::Cross => cross_cost,
            })
            .collect()
    };
    // 2|H| + |H_in|: in-links cost 3, cross-links cost 2.
    let thm_side = link_cover_instance(instance, class_cost(3, 2));
    let min_two_size_plus_in = match min_cost_cover(&thm_side) {
        CoverResult::Solved { cost, .. } => cost,
        CoverResult::Infeasible { .. } => unreachable!("feasibility already established"),
    };
    // |H| + |H_cross|: in-links cost 1, cross-links cost 2.
    let sub_side = link_cover_instance(instance, class_cost(1, 2));
    let min_size_plus_cross = match min_cost_cover(&sub_side) {
        CoverResult::Solved { cost, .. } => cost,
        CoverResult::Infeasible { .. } => unreachable!("feasibility already established"),
    };

    Ok(OptCertificate {
        opt_value,
        optimal,
        min_two_size_plus_in,
        min_size_plus_cross,
    })
}

/// All optimal solutions (feasible link sets of minimum cardinality).
/// Returns `BudgetExceeded` when more than `cap` optima exist.
pub fn enumerate_optima(
    instance: &Instance,
    link_budget: usize,
    cap: usize,
) -> Result<Vec<Vec<LinkId>>, ExactError> {
    let cert = brute_force_opt(instance, link_budget)?;
    let unit = link_cover_instance(instance, alloc::vec![1; instance.links().len()]);
    enumerate_covers_of_size(&unit, cert.opt_value, cap).ok_or(ExactError::BudgetExceeded {
        links: instance.links().len(),
        budget: cap,
    })
}

/// Solves every principal subcactus optimally and returns the union
/// (deduplicated by original link id). The result is feasible and costs at
/// most `|H| + |H_cross|` for any solution `H`.
pub fn solve_subcacti(instance: &Instance, leaf_cap: usize) -> Result<Solution, ExactError> {
    let leaves = instance.leaves();
    let subs = instance.principal_subcacti();
    let mut union: BTreeSet<LinkId> = BTreeSet::new();
    for sub in &subs {
        let sub_leaves = sub
            .original_vertices
            .iter()
            .filter(|&v| leaves.contains(v))
            .count();
        if sub_leaves > leaf_cap {
            return Err(ExactError::SubcactusTooLarge {
                leaves: sub_leaves,
                cap: leaf_cap,
            });
        }
        let m = sub.instance.links().len();
        let unit = link_cover_instance(&sub.instance, alloc::vec![1; m]);
        match min_cost_cover(&unit) {
            CoverResult::Infeasible { .. } => return Err(ExactError::InfeasibleInstance),
            CoverResult::Solved { items, .. } => {
                union.extend(items.into_iter().map(|i| sub.link_origin[i]));
            }
        }
    }
    let ids: Vec<LinkId> = union.into_iter().collect();
    match instance.check_solution(&ids)? {
        CheckOutcome::Feasible(s) => Ok(s),
        CheckOutcome::Infeasible { .. } => {
            unreachable!("union of subcactus optima covers every cut")
        }
    }
}

/// Better-of-two solver: the matching-based solution and the subcactus
/// union, whichever is smaller (the matching side on ties). On feasible
/// instances this is a 4/3-approximation.
pub fn solve_combined(instance: &Instance, leaf_cap: usize) -> Result<Solution, ExactError> {
    let matching_run = completion::run_matching_algorithm(instance)?;
    let subcacti = solve_subcacti(instance, leaf_cap)?;
    if matching_run.solution.size() <= subcacti.size() {
        Ok(matching_run.solution)
    } else {
        Ok(subcacti)
    }
}
