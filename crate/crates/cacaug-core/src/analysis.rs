//! Numeric verification of the guarantee constants.
//!
//! The rounding side of the analysis charges each leaf `t` a credit of
//! `b * g(lambda_t)` and is sound whenever a five-variable expression built
//! from `g` and `gain` stays non-negative over its constraint box; this
//! holds for `b = 0.452`, which [`verify_b`] re-checks by grid sweep with
//! local refinement. Trading that bound against the matching-based
//! guarantee leads to the factor optimization solved by [`compute_rho`]:
//! the worst case sits where `3/2 - alpha/2` meets
//! `1 + alpha - 2 b alpha (1 - e^{-alpha})`, giving `alpha ~ 0.4202` and a
//! factor just below 1.29.

use alloc::vec::Vec;

use libm::exp;

/// The credit coefficient the sweep certifies.
pub const B: f64 = 0.452;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalysisError {
    /// An argument left its domain; the message names the constraint.
    DomainError(&'static str),
}

impl core::fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AnalysisError::DomainError(what) => write!(f, "domain error: {what}"),
        }
    }
}

/// `g(lambda) = lambda * (1 - e^{-lambda})` on `[0, 1]`.
pub fn g(lambda: f64) -> Result<f64, AnalysisError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(AnalysisError::DomainError("lambda must lie in [0, 1]"));
    }
    Ok(g_raw(lambda))
}

fn g_raw(lambda: f64) -> f64 {
    lambda * (1.0 - exp(-lambda))
}

/// `gain(lambda, eta)`: `lambda (e^{-eta} - 1 + eta)` times `e^{-lambda+eta}`
/// when `eta > lambda / 2`, times `(1 - lambda + eta)` otherwise.
/// Requires `0 <= eta <= lambda <= 1`.
pub fn gain(lambda: f64, eta: f64) -> Result<f64, AnalysisError> {
    if !(0.0..=1.0).contains(&lambda) || !(0.0..=lambda).contains(&eta) {
        return Err(AnalysisError::DomainError("need 0 <= eta <= lambda <= 1"));
    }
    Ok(gain_raw(lambda, eta))
}

fn gain_raw(lambda: f64, eta: f64) -> f64 {
    let common = lambda * (exp(-eta) - 1.0 + eta);
    if eta > 0.5 * lambda {
        common * exp(-lambda + eta)
    } else {
        common * (1.0 - lambda + eta)
    }
}

/// Largest discrepancy between the two `gain` branches along the seam
/// `eta = lambda / 2`; reported, not asserted, since the branches are not
/// an exact match there.
pub fn gain_seam_gap(samples: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..=samples {
        let lambda = i as f64 / samples as f64;
        let eta = 0.5 * lambda;
        let common = lambda * (exp(-eta) - 1.0 + eta);
        let upper = common * exp(-lambda + eta);
        let lower = common * (1.0 - lambda + eta);
        let gap = (upper - lower).abs();
        if gap > worst {
            worst = gap;
        }
    }
    worst
}

/// Configuration for the b-condition sweep.
#[derive(Clone, Debug)]
pub struct BCheckConfig {
    /// Credit coefficient; must lie in `[5/12, 1/2]`.
    pub b: f64,
    pub grid_step: f64,
    pub refinement_rounds: u32,
    /// Sweep range for the free coupling variable `x(S_v)`.
    pub sv_range: (f64, f64),
}

impl BCheckConfig {
    pub fn new(b: f64, grid_step: f64, refinement_rounds: u32) -> Result<Self, AnalysisError> {
        if !(5.0 / 12.0..=0.5).contains(&b) {
            return Err(AnalysisError::DomainError("b must lie in [5/12, 1/2]"));
        }
        if grid_step.is_nan() || grid_step <= 0.0 {
            return Err(AnalysisError::DomainError("grid_step must be positive"));
        }
        Ok(BCheckConfig {
            b,
            grid_step,
            refinement_rounds,
            sv_range: (0.0, 1.0),
        })
    }
}

impl Default for BCheckConfig {
    fn default() -> Self {
        BCheckConfig {
            b: B,
            grid_step: 0.01,
            refinement_rounds: 2,
            sv_range: (0.0, 1.0),
        }
    }
}

/// A point of the b-condition constraint box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BPoint {
    pub lambda_v: f64,
    pub lambda_w: f64,
    pub eta: f64,
    pub s: f64,
    pub x_sv: f64,
}

/// The condition value at one point:
///
/// ```text
///   b / (lambda_w - eta) * gain(lambda_w, eta)
///   - s (b - 1/3) - (eta - s) (2(b - 2/5) - 1/30)
///   + max(0, x_sv - eta) (1/2 - b) + max(0, 1 - x_sv - eta + s) (1 - b)
/// ```
///
/// The guarantee needs this to stay non-negative over
/// `0 <= s <= eta <= lambda_w <= 1`, `0 <= s <= lambda_v <= 1`. The leading
/// term is taken as 0 when `lambda_w = 0` (where `gain` vanishes) and when
/// `lambda_w = eta`, where the quotient diverges to `+inf` for `eta > 0`
/// and the constraint is not binding; sweeps keep a one-step band away from
/// that diagonal.
pub fn b_condition_value(
    cfg: &BCheckConfig,
    point: &BPoint,
) -> Result<f64, AnalysisError> {
    let BPoint {
        lambda_v,
        lambda_w,
        eta,
        s,
        x_sv,
    } = *point;
    if !(0.0..=1.0).contains(&lambda_w) || !(0.0..=lambda_w).contains(&eta) {
        return Err(AnalysisError::DomainError("need 0 <= eta <= lambda_w <= 1"));
    }
    if !(0.0..=eta).contains(&s) {
        return Err(AnalysisError::DomainError("need 0 <= s <= eta"));
    }
    if !(s..=1.0).contains(&lambda_v) {
        return Err(AnalysisError::DomainError("need s <= lambda_v <= 1"));
    }
    Ok(b_condition_raw(cfg.b, lambda_w, eta, s, x_sv))
}

fn b_condition_raw(b: f64, lambda_w: f64, eta: f64, s: f64, x_sv: f64) -> f64 {
    let lead = if lambda_w == 0.0 || lambda_w == eta {
        0.0
    } else {
        b / (lambda_w - eta) * gain_raw(lambda_w, eta)
    };
    lead - s * (b - 1.0 / 3.0) - (eta - s) * (2.0 * (b - 2.0 / 5.0) - 1.0 / 30.0)
        + (x_sv - eta).max(0.0) * (0.5 - b)
        + (1.0 - x_sv - eta + s).max(0.0) * (1.0 - b)
}

/// Result of the b-condition sweep.
#[derive(Clone, Debug)]
pub struct BReport {
    pub min_value: f64,
    pub argmin: BPoint,
    pub evaluated: u64,
}

/// Sweeps the constraint box on a grid of the configured step, then refines
/// locally around the argmin (step divided by 10 per round).
///
/// The condition value does not involve `lambda_v`; its only constraint
/// `s <= lambda_v <= 1` is satisfiable for every feasible `s`, so the sweep
/// fixes `lambda_v = 1` and reports it so. The grid keeps `eta` at least
/// one step below `lambda_w`: on the diagonal the leading term diverges to
/// `+inf` and cannot produce a violation.
pub fn verify_b(cfg: &BCheckConfig) -> BReport {
    let steps = libm::round(1.0 / cfg.grid_step) as u64;
    let step = 1.0 / steps as f64;
    let (sv_lo, sv_hi) = cfg.sv_range;
    let sv_steps = libm::round((sv_hi - sv_lo) / step).max(1.0) as u64;

    let mut best = f64::INFINITY;
    let mut argmin = BPoint {
        lambda_v: 1.0,
        lambda_w: 0.0,
        eta: 0.0,
        s: 0.0,
        x_sv: sv_lo,
    };
    let mut evaluated = 0u64;

    for iw in 1..=steps {
        let lambda_w = iw as f64 * step;
        for ie in 0..iw {
            let eta = ie as f64 * step;
            for is in 0..=ie {
                let s = is as f64 * step;
                for ix in 0..=sv_steps {
                    let x_sv = sv_lo + ix as f64 * (sv_hi - sv_lo) / sv_steps as f64;
                    let value = b_condition_raw(cfg.b, lambda_w, eta, s, x_sv);
                    evaluated += 1;
                    if value < best {
                        best = value;
                        argmin = BPoint {
                            lambda_v: 1.0,
                            lambda_w,
                            eta,
                            s,
                            x_sv,
                        };
                    }
                }
            }
        }
    }

    // Local refinement around the argmin.
    let mut span = step;
    for _ in 0..cfg.refinement_rounds {
        let fine = span / 10.0;
        let center = argmin;
        for dw in -10..=10i32 {
            let lambda_w = center.lambda_w + dw as f64 * fine;
            if !(0.0..=1.0).contains(&lambda_w) {
                continue;
            }
            for de in -10..=10i32 {
                let eta = center.eta + de as f64 * fine;
                if !(0.0..=lambda_w - fine).contains(&eta) {
                    continue;
                }
                for ds in -10..=10i32 {
                    let s = center.s + ds as f64 * fine;
                    if !(0.0..=eta).contains(&s) {
                        continue;
                    }
                    for dx in -10..=10i32 {
                        let x_sv = center.x_sv + dx as f64 * fine;
                        if !(sv_lo..=sv_hi).contains(&x_sv) {
                            continue;
                        }
                        let value = b_condition_raw(cfg.b, lambda_w, eta, s, x_sv);
                        evaluated += 1;
                        if value < best {
                            best = value;
                            argmin = BPoint {
                                lambda_v: 1.0,
                                lambda_w,
                                eta,
                                s,
                                x_sv,
                            };
                        }
                    }
                }
            }
        }
        span = fine;
    }

    BReport {
        min_value: best,
        argmin,
        evaluated,
    }
}

/// The approximation-factor optimization.
#[derive(Clone, Copy, Debug)]
pub struct RhoResult {
    /// Location of the worst case, where the two guarantees meet.
    pub alpha_star: f64,
    /// The certified factor, `3/2 - alpha_star / 2`.
    pub rho: f64,
    /// `|(15 - 20 b) alpha + 20 b alpha e^{-alpha} - 5|` at `alpha_star`:
    /// the crossing equation scaled to match its usual rounded display
    /// `6 alpha + 9 alpha e^{-alpha} = 5`.
    pub residual: f64,
}

/// Crossing equation of the two guarantee branches at `lambda = alpha`,
/// scaled by 5: `(15 - 20 b) alpha + 20 b alpha e^{-alpha} - 5`.
fn crossing(b: f64, alpha: f64) -> f64 {
    (15.0 - 20.0 * b) * alpha + 20.0 * b * alpha * exp(-alpha) - 5.0
}

/// Maximizes `min(3/2 - alpha/2, 1 + alpha - 2 b alpha (1 - e^{-lambda}))`
/// over `0 <= alpha <= lambda <= 1` for `b = 0.452`.
///
/// The second branch decreases in `lambda`, so the worst case has
/// `lambda = alpha`; the first branch decreases and the second increases in
/// `alpha`, so the maximum sits at their crossing, found by bisection. With
/// the coefficients spelled out the crossing equation is
/// `5.96 alpha + 9.04 alpha e^{-alpha} = 5` (often displayed rounded as
/// `6 alpha + 9 alpha e^{-alpha} = 5`), giving `alpha ~ 0.4202`.
pub fn compute_rho() -> RhoResult {
    let b = B;
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    debug_assert!(crossing(b, lo) < 0.0 && crossing(b, hi) > 0.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if crossing(b, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha_star = 0.5 * (lo + hi);
    RhoResult {
        alpha_star,
        rho: 1.5 - 0.5 * alpha_star,
        residual: crossing(b, alpha_star).abs(),
    }
}

/// Both guarantee branches at a point; the second with `lambda = alpha`.
pub fn rho_branches(alpha: f64) -> (f64, f64) {
    (
        1.5 - 0.5 * alpha,
        1.0 + alpha - 2.0 * B * alpha * (1.0 - exp(-alpha)),
    )
}

/// Independent 2-D grid maximization of the raw objective
/// `min(3/2 - alpha/2, 1 + alpha - 2 b alpha (1 - e^{-lambda}))` over
/// `0 <= alpha <= lambda <= 1`.
pub fn rho_grid_oracle(step: f64) -> f64 {
    let steps = libm::round(1.0 / step) as u64;
    let mut best = f64::NEG_INFINITY;
    for ia in 0..=steps {
        let alpha = ia as f64 / steps as f64;
        let first = 1.5 - 0.5 * alpha;
        if first <= best {
            // The inner min cannot exceed the first branch, which only
            // decreases from here on.
            break;
        }
        for il in ia..=steps {
            let lambda = il as f64 / steps as f64;
            let second = 1.0 + alpha - 2.0 * B * alpha * (1.0 - exp(-lambda));
            let value = first.min(second);
            if value > best {
                best = value;
            }
        }
    }
    best
}

/// Samples `g` on a grid and checks midpoint convexity; returns the largest
/// violation (non-positive when convex, up to rounding).
pub fn g_convexity_violation(samples: usize) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    let pts: Vec<f64> = (0..=samples).map(|i| i as f64 / samples as f64).collect();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i..] {
            let lhs = g_raw(0.5 * (a + b));
            let rhs = 0.5 * (g_raw(a) + g_raw(b));
            worst = worst.max(lhs - rhs);
        }
    }
    worst
}
