//! Exact-rational two-phase simplex for small linear programs of the form
//! `min c^T x  s.t.  A x >= b, x >= 0`.
//!
//! All arithmetic is over arbitrary-precision rationals and pivoting uses
//! Bland's rule, so the solver terminates and the reported optimum is exact.
//! Built for covering LPs with a handful of rows and columns; the dense
//! tableau makes no attempt at being fast.

#![forbid(unsafe_code)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `min c^T x  s.t.  A x >= b, x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    /// Rows as (coefficients, right-hand side).
    pub rows: Vec<(Vec<Rat>, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

struct Tableau {
    /// rows[i] = coefficients over all columns plus rhs in the last slot.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for j in 0..=self.cols {
                let delta = factor.clone() * self.rows[row][j].clone();
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes `cost` over the tableau with Bland's rule. Returns false
    /// when unbounded.
    fn optimize(&mut self, cost: &[Rat]) -> bool {
        loop {
            // Reduced cost of the smallest-index improving column.
            let mut entering = None;
            for j in 0..self.cols {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() {
                        reduced -= cost[b].clone() * self.rows[i][j].clone();
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return true;
            };
            // Ratio test; smallest basis variable on ties (Bland).
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i).clone() / self.rows[i][col].clone();
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

/// Solves the program exactly.
pub fn solve_min(lp: &LinearProgram) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.rows.len();
    if m == 0 {
        return LpOutcome::Optimal {
            value: Rat::zero(),
            solution: vec![Rat::zero(); n],
        };
    }
    // Columns: n structural, m surplus, m artificial.
    let cols = n + 2 * m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in lp.rows.iter().enumerate() {
        assert_eq!(coeffs.len(), n, "row {i} has wrong arity");
        let flip = rhs.is_negative();
        let sign = if flip { -Rat::one() } else { Rat::one() };
        let mut row = vec![Rat::zero(); cols + 1];
        for (j, a) in coeffs.iter().enumerate() {
            row[j] = sign.clone() * a.clone();
        }
        // Surplus for the >= constraint (sign flips with the row).
        row[n + i] = -sign.clone();
        row[n + m + i] = Rat::one();
        row[cols] = sign * rhs.clone();
        rows.push(row);
        basis.push(n + m + i);
    }
    let mut t = Tableau { rows, basis, cols };

    // Phase 1: minimize the artificial sum.
    let mut phase1 = vec![Rat::zero(); cols];
    for slot in phase1[n + m..].iter_mut() {
        *slot = Rat::one();
    }
    let bounded = t.optimize(&phase1);
    debug_assert!(bounded, "phase 1 is bounded below by zero");
    let artificial_sum: Rat = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n + m)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if !artificial_sum.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive leftover zero-level artificials out of the basis.
    for i in 0..t.rows.len() {
        if t.basis[i] < n + m {
            continue;
        }
        if let Some(col) = (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
            t.pivot(i, col);
        }
    }
    // Rows still basic in an artificial are all-zero (redundant).
    let keep: Vec<usize> = (0..t.rows.len()).filter(|&i| t.basis[i] < n + m).collect();
    t.rows = keep.iter().map(|&i| t.rows[i].clone()).collect();
    t.basis = keep.iter().map(|&i| t.basis[i]).collect();

    // Phase 2: the real objective. Artificials stay non-basic at zero; a
    // positive cost keeps them from re-entering.
    let mut phase2 = vec![Rat::zero(); cols];
    phase2[..n].clone_from_slice(&lp.objective);
    for slot in phase2[n + m..].iter_mut() {
        *slot = Rat::one();
    }
    if !t.optimize(&phase2) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![Rat::zero(); n];
    let mut value = Rat::zero();
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            solution[b] = t.rhs(i).clone();
            value += lp.objective[b].clone() * t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal { value, solution }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(obj: &[i64], rows: &[(&[i64], i64)]) -> LinearProgram {
        LinearProgram {
            objective: obj.iter().map(|&c| rat(c)).collect(),
            rows: rows
                .iter()
                .map(|(coeffs, b)| (coeffs.iter().map(|&c| rat(c)).collect(), rat(*b)))
                .collect(),
        }
    }

    fn optimal_value(out: LpOutcome) -> Rat {
        match out {
            LpOutcome::Optimal { value, .. } => value,
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn single_constraint() {
        let p = lp(&[1, 1], &[(&[1, 1], 1)]);
        assert_eq!(optimal_value(solve_min(&p)), rat(1));
    }

    #[test]
    fn picks_cheaper_variable() {
        let p = lp(&[3, 1], &[(&[1, 1], 2)]);
        assert_eq!(optimal_value(solve_min(&p)), rat(2));
    }

    #[test]
    fn odd_cycle_has_fractional_optimum() {
        // Vertex cover LP of a triangle: optimum 3/2 at x = (1/2, 1/2, 1/2).
        let p = lp(
            &[1, 1, 1],
            &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)],
        );
        match solve_min(&p) {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, Rat::new(3.into(), 2.into()));
                for x in solution {
                    assert_eq!(x, Rat::new(1.into(), 2.into()));
                }
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_row() {
        let p = lp(&[1], &[(&[0], 1)]);
        assert_eq!(solve_min(&p), LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let p = lp(&[1, 1], &[(&[1, 1], 1), (&[1, 1], 1), (&[2, 2], 2)]);
        assert_eq!(optimal_value(solve_min(&p)), rat(1));
    }

    #[test]
    fn no_rows_means_zero() {
        let p = LinearProgram {
            objective: vec![rat(1)],
            rows: vec![],
        };
        assert_eq!(optimal_value(solve_min(&p)), rat(0));
    }
}
