//! Kelley cutting-plane method for concave programs.
//!
//! Solves `maximize c . x` subject to linear constraints, box bounds, and
//! convex constraints `g_i(x) <= 0` available through value+subgradient
//! oracles. Each convex constraint is outer-approximated by supporting
//! hyperplanes ("cuts") generated at LP iterates: for convex `g`,
//! `g(y) >= g(x0) + grad . (y - x0)`, so `grad . y <= grad . x0 - g(x0)` is
//! valid for the true feasible set and cuts off the infeasible iterate `x0`.
//!
//! The loop stops when the true violation at the LP iterate is at most `tol`
//! or the cut budget is exhausted. Because the LP region always contains the
//! true region, LP infeasibility certifies true infeasibility, and the final
//! LP objective upper-bounds the true optimum. When an interior point is
//! supplied, the returned iterate is rounded onto the true feasible set by a
//! segment search toward it.

use alloc::vec::Vec;

use super::lp::{solve_lp, LinearConstraint, LinearProgram, SolveStatus, SolverReport};

/// One linear cut `coeffs . x <= bound`, valid for the true feasible set.
#[derive(Debug, Clone)]
pub struct Cut {
    pub coeffs: Vec<f64>,
    pub bound: f64,
}

/// Separation oracle for one convex constraint (or a whole family).
pub trait CutOracle {
    /// Largest true violation at `x` (0 when feasible).
    fn violation(&self, x: &[f64]) -> f64;
    /// Cuts separating `x` from the true feasible set; may be empty when `x`
    /// is feasible. Every returned cut must be valid for the true set.
    fn cuts_at(&self, x: &[f64]) -> Vec<Cut>;
}

/// Adapter: a single smooth convex constraint `g(x) <= 0` given by a
/// closure returning `(g(x), subgradient)`.
pub struct FnOracle<F: Fn(&[f64]) -> (f64, Vec<f64>)> {
    pub eval: F,
}

impl<F: Fn(&[f64]) -> (f64, Vec<f64>)> CutOracle for FnOracle<F> {
    fn violation(&self, x: &[f64]) -> f64 {
        (self.eval)(x).0.max(0.0)
    }

    fn cuts_at(&self, x: &[f64]) -> Vec<Cut> {
        let (g, grad) = (self.eval)(x);
        let shift: f64 = grad.iter().zip(x).map(|(d, v)| d * v).sum();
        alloc::vec![Cut { coeffs: grad, bound: shift - g }]
    }
}

/// A concave program in epigraph-free form (concave objective pieces must be
/// lifted by the caller; the objective here is linear).
pub struct ConcaveProgram<'a> {
    /// Maximize `objective . x`.
    pub objective: &'a [f64],
    pub linear: &'a [LinearConstraint],
    pub bounds: &'a [(f64, f64)],
    pub oracles: &'a [&'a dyn CutOracle],
}

#[derive(Debug, Clone, Copy)]
pub struct KelleySettings {
    /// Stop when the true violation at the iterate drops to this level.
    pub tol: f64,
    /// Total cut budget.
    pub max_cuts: usize,
    /// Cuts accepted per round (the most violated oracles first).
    pub cuts_per_round: usize,
    /// LP pivot/feasibility tolerance.
    pub lp_tol: f64,
}

impl Default for KelleySettings {
    fn default() -> Self {
        KelleySettings { tol: 1e-7, max_cuts: 500, cuts_per_round: 64, lp_tol: 1e-9 }
    }
}

/// Solve the concave program. `seeds` are points at which initial cuts are
/// generated (bound-feasible points; typically known feasible allocations).
/// `interior` is an optional strictly feasible point used to round the final
/// iterate onto the true feasible set.
pub fn solve_concave_program(
    prog: &ConcaveProgram,
    seeds: &[Vec<f64>],
    interior: Option<&[f64]>,
    settings: KelleySettings,
) -> SolverReport {
    let n = prog.objective.len();
    let mut cuts: Vec<Cut> = Vec::new();
    for seed in seeds {
        for oracle in prog.oracles {
            cuts.extend(oracle.cuts_at(seed));
        }
    }

    let mut rounds = 0usize;
    let mut last: Option<SolverReport> = None;
    loop {
        rounds += 1;
        let mut constraints: Vec<LinearConstraint> = Vec::with_capacity(prog.linear.len() + cuts.len());
        constraints.extend_from_slice(prog.linear);
        for cut in &cuts {
            constraints.push(LinearConstraint::le(cut.coeffs.clone(), cut.bound));
        }
        let lp = LinearProgram {
            objective: prog.objective.to_vec(),
            constraints,
            bounds: prog.bounds.to_vec(),
        };
        let mut report = solve_lp(&lp, settings.lp_tol);
        match report.status {
            SolveStatus::Optimal => {}
            SolveStatus::Infeasible => {
                // The LP region contains the true region, so this certifies
                // infeasibility of the concave program.
                report.iterations = rounds;
                return report;
            }
            _ => {
                report.iterations = rounds;
                return report;
            }
        }

        let viol = true_violation(prog, &report.solution);
        if viol <= settings.tol || cuts.len() >= settings.max_cuts {
            let mut out = finish(prog, report.solution, interior, settings);
            out.iterations = rounds;
            if viol > settings.tol {
                out.status = SolveStatus::IterationLimit;
            }
            return out;
        }

        // Gather new cuts at the iterate, most violated oracle families first.
        let mut added = 0usize;
        for oracle in prog.oracles {
            if oracle.violation(&report.solution) <= settings.tol * 0.5 {
                continue;
            }
            for cut in oracle.cuts_at(&report.solution) {
                cuts.push(cut);
                added += 1;
                if added >= settings.cuts_per_round || cuts.len() >= settings.max_cuts {
                    break;
                }
            }
            if added >= settings.cuts_per_round || cuts.len() >= settings.max_cuts {
                break;
            }
        }
        if added == 0 {
            // Oracles could not separate the point; accept it as-is.
            let mut out = finish(prog, report.solution, interior, settings);
            out.iterations = rounds;
            return out;
        }
        last = Some(report);
        let _ = &last;
    }
}

fn true_violation(prog: &ConcaveProgram, x: &[f64]) -> f64 {
    let mut v = 0.0f64;
    for oracle in prog.oracles {
        v = v.max(oracle.violation(x));
    }
    v
}

/// Round `x` onto the true feasible set along the segment toward `interior`
/// (both endpoints satisfy the linear rows, so only oracle constraints are
/// re-checked), then report objective and residual violation at the result.
fn finish(
    prog: &ConcaveProgram,
    x: Vec<f64>,
    interior: Option<&[f64]>,
    settings: KelleySettings,
) -> SolverReport {
    let mut point = x;
    if let Some(int) = interior {
        if true_violation(prog, &point) > 0.0 && true_violation(prog, int) <= 0.0 {
            // Binary search the smallest t with x + t (int - x) feasible.
            let mut lo = 0.0f64; // violated end
            let mut hi = 1.0f64; // feasible end
            let base = point.clone();
            let blend = |t: f64, out: &mut [f64]| {
                for i in 0..out.len() {
                    out[i] = base[i] + t * (int[i] - base[i]);
                }
            };
            let mut probe = base.clone();
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                blend(mid, &mut probe);
                if true_violation(prog, &probe) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-12 {
                    break;
                }
            }
            blend(hi, &mut probe);
            point = probe;
        }
    }
    let objective_value: f64 = prog.objective.iter().zip(&point).map(|(c, v)| c * v).sum();
    let mut violation = true_violation(prog, &point);
    for c in prog.linear {
        violation = violation.max(c.violation(&point));
    }
    let _ = settings;
    SolverReport {
        status: SolveStatus::Optimal,
        objective_value,
        solution: point,
        max_constraint_violation: violation,
        iterations: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::Float;

    #[test]
    fn quadratic_ball_constraint() {
        // max x + y s.t. x^2 + y^2 <= 2 -> x = y = 1.
        let oracle = FnOracle {
            eval: |x: &[f64]| {
                let g = x[0] * x[0] + x[1] * x[1] - 2.0;
                (g, alloc::vec![2.0 * x[0], 2.0 * x[1]])
            },
        };
        let oracles: [&dyn CutOracle; 1] = [&oracle];
        let prog = ConcaveProgram {
            objective: &[1.0, 1.0],
            linear: &[],
            bounds: &[(0.0, 4.0), (0.0, 4.0)],
            oracles: &oracles,
        };
        let r = solve_concave_program(
            &prog,
            &[alloc::vec![1.0, 1.0]],
            Some(&[0.0, 0.0]),
            KelleySettings::default(),
        );
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_relative_eq!(r.objective_value, 2.0, max_relative = 1e-5);
        assert!(r.max_constraint_violation <= 1e-7);
    }

    #[test]
    fn sqrt_epigraph_splits_budget_evenly() {
        // max sum_k t_k s.t. t_k <= sqrt(x_k), sum x <= 1 -> x_k = 1/K,
        // optimum sqrt(K). Variables [x_1..x_K, t_1..t_K]. The sqrt
        // subgradient needs the epsilon floor at x = 0.
        const K: usize = 4;
        struct SqrtCap {
            k: usize,
        }
        impl CutOracle for SqrtCap {
            fn violation(&self, x: &[f64]) -> f64 {
                (x[K + self.k] - x[self.k].max(0.0).sqrt()).max(0.0)
            }
            fn cuts_at(&self, x: &[f64]) -> Vec<Cut> {
                // g = t - sqrt(x) convex in (x, t); d/dx = -1/(2 sqrt(x)).
                let xe = x[self.k].max(1e-12);
                let ds = -0.5 / xe.sqrt();
                let mut coeffs = alloc::vec![0.0; 2 * K];
                coeffs[self.k] = ds;
                coeffs[K + self.k] = 1.0;
                let g = x[K + self.k] - xe.sqrt();
                let shift: f64 = ds * x[self.k] + x[K + self.k];
                alloc::vec![Cut { coeffs, bound: shift - g }]
            }
        }
        let caps: Vec<SqrtCap> = (0..K).map(|k| SqrtCap { k }).collect();
        let oracle_refs: Vec<&dyn CutOracle> = caps.iter().map(|c| c as &dyn CutOracle).collect();
        let mut budget = alloc::vec![1.0; K];
        budget.extend(alloc::vec![0.0; K]);
        let mut objective = alloc::vec![0.0; K];
        objective.extend(alloc::vec![1.0; K]);
        let mut interior = alloc::vec![1.0 / K as f64; K];
        interior.extend(alloc::vec![0.0; K]);
        let mut seed = alloc::vec![1.0 / K as f64; K];
        seed.extend(alloc::vec![0.5 / K as f64; K]);
        let prog = ConcaveProgram {
            objective: &objective,
            linear: &[LinearConstraint::le(budget, 1.0)],
            bounds: &alloc::vec![(0.0, 2.0); 2 * K],
            oracles: &oracle_refs,
        };
        let r = solve_concave_program(&prog, &[seed], Some(&interior), KelleySettings::default());
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_relative_eq!(r.objective_value, 2.0, max_relative = 2e-4); // sqrt(4)
        for k in 0..K {
            assert_relative_eq!(r.solution[k], 0.25, epsilon = 2e-3);
        }
        assert!(r.max_constraint_violation <= 1e-7);
    }

    #[test]
    fn no_convex_constraints_reduces_to_lp() {
        let prog = ConcaveProgram {
            objective: &[1.0, 1.0],
            linear: &[LinearConstraint::le(alloc::vec![1.0, 2.0], 4.0)],
            bounds: &[(0.0, 3.0), (0.0, 3.0)],
            oracles: &[],
        };
        let r = solve_concave_program(&prog, &[], None, KelleySettings::default());
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_relative_eq!(r.objective_value, 5.0, max_relative = 1e-12); // x=3, y=0.5
    }

    #[test]
    fn infeasible_linear_rows_certify_infeasibility() {
        let oracle = FnOracle {
            eval: |x: &[f64]| (x[0] * x[0] - 1.0, alloc::vec![2.0 * x[0]]),
        };
        let oracles: [&dyn CutOracle; 1] = [&oracle];
        let prog = ConcaveProgram {
            objective: &[1.0],
            linear: &[
                LinearConstraint::ge(alloc::vec![1.0], 5.0),
                LinearConstraint::le(alloc::vec![1.0], 2.0),
            ],
            bounds: &[(0.0, f64::INFINITY)],
            oracles: &oracles,
        };
        let r = solve_concave_program(&prog, &[], None, KelleySettings::default());
        assert_eq!(r.status, SolveStatus::Infeasible);
    }
}
