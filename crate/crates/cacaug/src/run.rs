//! Solver entry points producing solution files, and the re-verification
//! of stored solutions against their instance.

use std::time::Instant;

use cacaug_core::cactus::{CheckOutcome, Instance, TwoCut};
use cacaug_core::completion::{run_matching_algorithm, run_naive_max_cardinality, SolveError};
use cacaug_core::exact::{brute_force_opt, solve_subcacti, ExactError, DEFAULT_SUBCACTUS_LEAF_CAP};
use cacaug_core::LinkId;

use crate::formats::{SolutionFile, SolutionStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Matching,
    Subcactus,
    Combined,
    Exact,
    /// Max-cardinality baseline, for comparisons.
    Naive,
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Matching => "matching",
            Algo::Subcactus => "subcactus",
            Algo::Combined => "combined",
            Algo::Exact => "exact",
            Algo::Naive => "naive",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Link budget for the exact solver (required there).
    pub budget: Option<usize>,
    /// Leaves-per-subcactus cap for the subcactus solver.
    pub leaf_cap: usize,
    /// Include wall time in the output (breaks byte-determinism).
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: None,
            leaf_cap: DEFAULT_SUBCACTUS_LEAF_CAP,
            timing: false,
        }
    }
}

#[derive(Clone, Debug)]
pub enum RunError {
    Solve(SolveError),
    Exact(ExactError),
    MissingBudget,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Solve(e) => write!(f, "{e}"),
            RunError::Exact(e) => write!(f, "{e}"),
            RunError::MissingBudget => write!(f, "the exact solver needs --budget"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<SolveError> for RunError {
    fn from(e: SolveError) -> Self {
        RunError::Solve(e)
    }
}

impl From<ExactError> for RunError {
    fn from(e: ExactError) -> Self {
        RunError::Exact(e)
    }
}

/// Runs one solver and packages the result.
pub fn solve(instance: &Instance, algo: Algo, opts: &RunOptions) -> Result<SolutionFile, RunError> {
    let started = Instant::now();
    let leaf_count = instance.leaves().count();
    let mut stats = SolutionStats {
        leaf_count,
        ..SolutionStats::default()
    };
    let (link_ids, in_count, cross_count) = match algo {
        Algo::Matching | Algo::Naive => {
            let run = if algo == Algo::Matching {
                run_matching_algorithm(instance)?
            } else {
                run_naive_max_cardinality(instance)?
            };
            stats.matching_size = Some(run.matching.size());
            stats.matching_in_count = Some(run.matching.in_count);
            stats.cover_links = Some(run.cover.links.len());
            stats.cover_arcs = Some(run.cover.arc_count());
            stats.completion_bound_x2 = Some(
                (2 * run.matching.size() + run.matching.in_count) as usize
                    + 2 * (leaf_count - 2 * run.matching.size()),
            );
            let s = run.solution;
            (s.link_ids, s.in_count, s.cross_count)
        }
        Algo::Subcactus => {
            let s = solve_subcacti(instance, opts.leaf_cap)?;
            stats.subcactus_count = Some(instance.principal_subcacti().len());
            stats.subcactus_leaf_cap = Some(opts.leaf_cap);
            (s.link_ids, s.in_count, s.cross_count)
        }
        Algo::Combined => {
            let matching = run_matching_algorithm(instance)?;
            let sub = solve_subcacti(instance, opts.leaf_cap)?;
            stats.matching_size = Some(matching.matching.size());
            stats.matching_in_count = Some(matching.matching.in_count);
            stats.subcactus_count = Some(instance.principal_subcacti().len());
            stats.subcactus_leaf_cap = Some(opts.leaf_cap);
            let s = if matching.solution.size() <= sub.size() {
                matching.solution
            } else {
                sub
            };
            (s.link_ids, s.in_count, s.cross_count)
        }
        Algo::Exact => {
            let budget = opts.budget.ok_or(RunError::MissingBudget)?;
            let cert = brute_force_opt(instance, budget)?;
            stats.opt_value = Some(cert.opt_value);
            match instance
                .check_solution(&cert.optimal)
                .map_err(SolveError::from)?
            {
                CheckOutcome::Feasible(s) => (s.link_ids, s.in_count, s.cross_count),
                CheckOutcome::Infeasible { .. } => {
                    unreachable!("oracle returned an infeasible optimum")
                }
            }
        }
    };
    if opts.timing {
        stats.millis = Some(started.elapsed().as_millis());
    }
    stats.in_count = in_count;
    stats.cross_count = cross_count;
    Ok(SolutionFile {
        algorithm: algo.name().to_string(),
        size: link_ids.len(),
        link_ids,
        feasible: true,
        stats,
    })
}

/// Why a stored solution failed re-verification.
#[derive(Clone, Debug)]
pub enum VerifyFailure {
    UnknownLink(LinkId),
    NotFeasible { witness: TwoCut },
    FlagMismatch(&'static str),
    BoundViolated(&'static str),
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::UnknownLink(id) => write!(f, "unknown link id {id}"),
            VerifyFailure::NotFeasible { witness } => {
                let verts: Vec<usize> = witness.vertices.iter().collect();
                write!(f, "solution leaves a cut uncovered; witness {verts:?}")
            }
            VerifyFailure::FlagMismatch(what) => write!(f, "recorded {what} does not match"),
            VerifyFailure::BoundViolated(what) => write!(f, "recorded bound violated: {what}"),
        }
    }
}

impl std::error::Error for VerifyFailure {}

/// Re-checks feasibility and every recorded statistic and bound of a
/// stored solution.
pub fn verify(instance: &Instance, solution: &SolutionFile) -> Result<(), VerifyFailure> {
    let outcome = instance
        .check_solution(&solution.link_ids)
        .map_err(|e| match e {
            cacaug_core::CactusError::UnknownLinkId { id } => VerifyFailure::UnknownLink(id),
            _ => VerifyFailure::FlagMismatch("instance"),
        })?;
    let sol = match outcome {
        CheckOutcome::Feasible(s) => s,
        CheckOutcome::Infeasible { witness } => {
            return Err(VerifyFailure::NotFeasible { witness })
        }
    };
    if !solution.feasible {
        return Err(VerifyFailure::FlagMismatch("feasible flag"));
    }
    if solution.size != solution.link_ids.len() || sol.size() != solution.size {
        return Err(VerifyFailure::FlagMismatch("size"));
    }
    let stats = &solution.stats;
    if sol.in_count != stats.in_count || sol.cross_count != stats.cross_count {
        return Err(VerifyFailure::FlagMismatch("in/cross counts"));
    }
    if instance.leaves().count() != stats.leaf_count {
        return Err(VerifyFailure::FlagMismatch("leaf count"));
    }
    if let (Some(ms), Some(mi)) = (stats.matching_size, stats.matching_in_count) {
        let t = stats.leaf_count;
        if 2 * ms < ms + mi || 2 * ms > t {
            return Err(VerifyFailure::FlagMismatch("matching counts"));
        }
        if let Some(bound) = stats.completion_bound_x2 {
            if bound != 2 * ms + mi + 2 * (t - 2 * ms) {
                return Err(VerifyFailure::FlagMismatch("completion bound"));
            }
            if solution.algorithm == "matching" && 2 * solution.size > bound {
                return Err(VerifyFailure::BoundViolated(
                    "2 |F| <= 2|M| + |M_in| + 2(|T| - 2|M|)",
                ));
            }
        }
        if let Some(arcs) = stats.cover_arcs {
            if solution.algorithm == "matching" && 2 * arcs > mi + 2 * (t - 2 * ms) {
                return Err(VerifyFailure::BoundViolated(
                    "2 arcs <= |M_in| + 2(|T| - 2|M|)",
                ));
            }
            if stats.cover_links.map(|l| l > arcs) == Some(true) {
                return Err(VerifyFailure::FlagMismatch("cover links vs arcs"));
            }
        }
    }
    if let Some(opt) = stats.opt_value {
        if solution.algorithm == "exact" && opt != solution.size {
            return Err(VerifyFailure::FlagMismatch("optimum value"));
        }
    }
    Ok(())
}
