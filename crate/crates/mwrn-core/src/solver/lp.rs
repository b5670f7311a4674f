//! Dense two-phase primal simplex with deterministic pivoting.
//!
//! The pivot rule is Dantzig's (most negative reduced cost) with
//! lowest-index tie-breaking for speed, switching permanently to Bland's
//! rule after a stretch of degenerate pivots so cycling is impossible. The
//! ratio test breaks ties by the lowest basic-variable index. With fixed
//! rules and no randomization, identical inputs give identical outputs.
//!
//! Problems are stated over general variables with box bounds; internally
//! variables are shifted/split to the standard form `A y = b, y >= 0` with
//! row equilibration (each row scaled to unit max-|coefficient|) for
//! numerical balance.

use alloc::vec;
use alloc::vec::Vec;

/// Constraint sense for [`LinearConstraint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs . x (<=|=|>=) bound`.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub bound: f64,
}

impl LinearConstraint {
    pub fn le(coeffs: Vec<f64>, bound: f64) -> Self {
        LinearConstraint { coeffs, relation: Relation::Le, bound }
    }
    pub fn eq(coeffs: Vec<f64>, bound: f64) -> Self {
        LinearConstraint { coeffs, relation: Relation::Eq, bound }
    }
    pub fn ge(coeffs: Vec<f64>, bound: f64) -> Self {
        LinearConstraint { coeffs, relation: Relation::Ge, bound }
    }

    /// Signed violation of this constraint at `x` (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs: f64 = self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        match self.relation {
            Relation::Le => (lhs - self.bound).max(0.0),
            Relation::Ge => (self.bound - lhs).max(0.0),
            Relation::Eq => (lhs - self.bound).abs(),
        }
    }
}

/// A linear program: maximize `objective . x` subject to `constraints` and
/// per-variable box bounds (use `f64::INFINITY`/`NEG_INFINITY` for none).
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<LinearConstraint>,
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

/// Outcome of an LP or cutting-plane solve.
#[derive(Debug, Clone)]
pub struct SolverReport {
    pub status: SolveStatus,
    /// Objective value at `solution` (maximization sense).
    pub objective_value: f64,
    pub solution: Vec<f64>,
    /// Maximum violation over the original constraints and bounds at
    /// `solution`, re-evaluated independently of the solve path.
    pub max_constraint_violation: f64,
    /// Simplex pivots performed (both phases), or cutting-plane rounds.
    pub iterations: usize,
}

impl SolverReport {
    fn failed(status: SolveStatus, n: usize, iterations: usize) -> Self {
        SolverReport {
            status,
            objective_value: f64::NEG_INFINITY,
            solution: vec![0.0; n],
            max_constraint_violation: f64::INFINITY,
            iterations,
        }
    }
}

const MAX_PIVOTS: usize = 50_000;
/// Degenerate-pivot streak that triggers the switch to Bland's rule.
const STALL_LIMIT: usize = 60;

/// Solve `lp` with feasibility/pivot tolerance `tol` (1e-9 is the library
/// default).
pub fn solve_lp(lp: &LinearProgram, tol: f64) -> SolverReport {
    let n = lp.objective.len();
    debug_assert_eq!(lp.bounds.len(), n, "one (lo, hi) bound pair per variable");
    for c in &lp.constraints {
        debug_assert_eq!(c.coeffs.len(), n);
    }

    // ---- variable transform to y >= 0 ----------------------------------
    #[derive(Clone, Copy)]
    enum VarMap {
        /// x = lo + y[col]
        Shift { col: usize, lo: f64 },
        /// x = hi - y[col]
        Flip { col: usize, hi: f64 },
        /// x = y[pos] - y[neg]
        Split { pos: usize, neg: usize },
    }
    let mut maps = Vec::with_capacity(n);
    let mut ny = 0usize;
    let mut upper_rows: Vec<(usize, f64)> = Vec::new(); // (y col, cap)
    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        if lo > hi {
            return SolverReport::failed(SolveStatus::Infeasible, n, 0);
        }
        if lo.is_finite() {
            maps.push(VarMap::Shift { col: ny, lo });
            if hi.is_finite() {
                upper_rows.push((ny, hi - lo));
            }
            ny += 1;
        } else if hi.is_finite() {
            maps.push(VarMap::Flip { col: ny, hi });
            ny += 1;
        } else {
            maps.push(VarMap::Split { pos: ny, neg: ny + 1 });
            ny += 2;
        }
        let _ = j;
    }

    // ---- rows in y space ------------------------------------------------
    struct Row {
        coeffs: Vec<f64>,
        relation: Relation,
        bound: f64,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(lp.constraints.len() + upper_rows.len());
    for c in &lp.constraints {
        let mut coeffs = vec![0.0; ny];
        let mut bound = c.bound;
        for (j, &a) in c.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            match maps[j] {
                VarMap::Shift { col, lo } => {
                    coeffs[col] += a;
                    bound -= a * lo;
                }
                VarMap::Flip { col, hi } => {
                    coeffs[col] -= a;
                    bound -= a * hi;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[pos] += a;
                    coeffs[neg] -= a;
                }
            }
        }
        rows.push(Row { coeffs, relation: c.relation, bound });
    }
    for &(col, cap) in &upper_rows {
        let mut coeffs = vec![0.0; ny];
        coeffs[col] = 1.0;
        rows.push(Row { coeffs, relation: Relation::Le, bound: cap });
    }

    // ---- scale, orient (rhs >= 0), drop trivial rows --------------------
    let mut keep: Vec<Row> = Vec::with_capacity(rows.len());
    for mut r in rows {
        let scale = r.coeffs.iter().fold(0.0f64, |m, &a| m.max(a.abs()));
        if scale <= 0.0 {
            let ok = match r.relation {
                Relation::Le => r.bound >= -tol,
                Relation::Ge => r.bound <= tol,
                Relation::Eq => r.bound.abs() <= tol,
            };
            if ok {
                continue;
            }
            return SolverReport::failed(SolveStatus::Infeasible, n, 0);
        }
        let inv = 1.0 / scale;
        for a in &mut r.coeffs {
            *a *= inv;
        }
        r.bound *= inv;
        if r.bound < 0.0 {
            for a in &mut r.coeffs {
                *a = -*a;
            }
            r.bound = -r.bound;
            r.relation = match r.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        keep.push(r);
    }
    let rows = keep;
    let m = rows.len();

    // ---- tableau: columns = y | slacks/surplus | artificials | rhs ------
    let mut n_slack = 0usize;
    for r in &rows {
        if r.relation != Relation::Eq {
            n_slack += 1;
        }
    }
    let mut n_art = 0usize;
    for r in &rows {
        if r.relation != Relation::Le {
            n_art += 1;
        }
    }
    let width = ny + n_slack + n_art;
    let mut a = vec![0.0f64; m * width];
    let mut b = vec![0.0f64; m];
    let mut basic = vec![usize::MAX; m];
    let mut is_artificial = vec![false; width];
    let mut s_at = ny;
    let mut art_at = ny + n_slack;
    for (i, r) in rows.iter().enumerate() {
        a[i * width..i * width + ny].copy_from_slice(&r.coeffs);
        b[i] = r.bound;
        match r.relation {
            Relation::Le => {
                a[i * width + s_at] = 1.0;
                basic[i] = s_at;
                s_at += 1;
            }
            Relation::Ge => {
                a[i * width + s_at] = -1.0;
                s_at += 1;
                a[i * width + art_at] = 1.0;
                is_artificial[art_at] = true;
                basic[i] = art_at;
                art_at += 1;
            }
            Relation::Eq => {
                a[i * width + art_at] = 1.0;
                is_artificial[art_at] = true;
                basic[i] = art_at;
                art_at += 1;
            }
        }
    }

    let mut tab = Tableau { m, width, a, b, basic };
    let mut pivots = 0usize;

    // ---- phase 1: minimize sum of artificials ---------------------------
    if n_art > 0 {
        let costs: Vec<f64> = (0..width).map(|j| if is_artificial[j] { 1.0 } else { 0.0 }).collect();
        let status = tab.minimize(&costs, tol, &mut pivots, None);
        if status == Some(SolveStatus::IterationLimit) {
            return SolverReport::failed(SolveStatus::IterationLimit, n, pivots);
        }
        let z1: f64 = (0..m)
            .filter(|&i| is_artificial[tab.basic[i]])
            .map(|i| tab.b[i])
            .sum();
        if z1 > tol.max(1e-9) * 10.0 {
            return SolverReport::failed(SolveStatus::Infeasible, n, pivots);
        }
        // Drive remaining artificials out of the basis where possible.
        for i in 0..m {
            if !is_artificial[tab.basic[i]] {
                continue;
            }
            let mut entered = false;
            for j in 0..ny + n_slack {
                if tab.a[i * tab.width + j].abs() > tol {
                    tab.pivot(i, j);
                    pivots += 1;
                    entered = true;
                    break;
                }
            }
            if !entered {
                // Redundant row; neutralize it so it can never bind.
                for j in 0..tab.width {
                    tab.a[i * tab.width + j] = 0.0;
                }
                tab.a[i * tab.width + tab.basic[i]] = 1.0;
                tab.b[i] = 0.0;
            }
        }
    }

    // ---- phase 2: minimize -objective -----------------------------------
    let mut costs = vec![0.0f64; width];
    for (j, map) in maps.iter().enumerate() {
        let c = lp.objective[j];
        match *map {
            VarMap::Shift { col, .. } => costs[col] = -c,
            VarMap::Flip { col, .. } => costs[col] = c,
            VarMap::Split { pos, neg } => {
                costs[pos] = -c;
                costs[neg] = c;
            }
        }
    }
    let forbidden = is_artificial;
    let status = tab.minimize(&costs, tol, &mut pivots, Some(&forbidden));
    match status {
        Some(SolveStatus::Unbounded) => {
            return SolverReport::failed(SolveStatus::Unbounded, n, pivots)
        }
        Some(SolveStatus::IterationLimit) => {
            return SolverReport::failed(SolveStatus::IterationLimit, n, pivots)
        }
        _ => {}
    }

    // ---- extract ---------------------------------------------------------
    let mut y = vec![0.0f64; tab.width];
    for i in 0..m {
        y[tab.basic[i]] = tab.b[i];
    }
    let mut x = vec![0.0f64; n];
    for (j, map) in maps.iter().enumerate() {
        x[j] = match *map {
            VarMap::Shift { col, lo } => lo + y[col],
            VarMap::Flip { col, hi } => hi - y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        };
    }
    let objective_value: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let mut violation = 0.0f64;
    for c in &lp.constraints {
        violation = violation.max(c.violation(&x));
    }
    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        if lo.is_finite() {
            violation = violation.max(lo - x[j]);
        }
        if hi.is_finite() {
            violation = violation.max(x[j] - hi);
        }
    }
    SolverReport {
        status: SolveStatus::Optimal,
        objective_value,
        solution: x,
        max_constraint_violation: violation.max(0.0),
        iterations: pivots,
    }
}

struct Tableau {
    m: usize,
    width: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    basic: Vec<usize>,
}

impl Tableau {
    /// Minimize `costs . y` from the current basic feasible point.
    /// Returns `None` on optimality, or a failure status.
    fn minimize(
        &mut self,
        costs: &[f64],
        tol: f64,
        pivots: &mut usize,
        forbidden: Option<&Vec<bool>>,
    ) -> Option<SolveStatus> {
        // Reduced-cost row, kept updated through pivots.
        let mut rc: Vec<f64> = costs.to_vec();
        let mut z = 0.0f64;
        for i in 0..self.m {
            let cb = costs[self.basic[i]];
            if cb != 0.0 {
                for j in 0..self.width {
                    rc[j] -= cb * self.a[i * self.width + j];
                }
                z += cb * self.b[i];
            }
        }
        let mut stall = 0usize;
        let mut bland = false;
        loop {
            if *pivots >= MAX_PIVOTS {
                return Some(SolveStatus::IterationLimit);
            }
            // Entering column.
            let mut enter = usize::MAX;
            if bland {
                for j in 0..self.width {
                    if rc[j] < -tol && forbidden.map_or(true, |f| !f[j]) {
                        enter = j;
                        break;
                    }
                }
            } else {
                let mut best = -tol;
                for j in 0..self.width {
                    if rc[j] < best && forbidden.map_or(true, |f| !f[j]) {
                        best = rc[j];
                        enter = j;
                    }
                }
            }
            if enter == usize::MAX {
                return None; // optimal
            }
            // Ratio test.
            let mut leave = usize::MAX;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.m {
                let aij = self.a[i * self.width + enter];
                if aij > tol {
                    let ratio = self.b[i] / aij;
                    if ratio < best_ratio - 1e-12
                        || (ratio < best_ratio + 1e-12
                            && (leave == usize::MAX || self.basic[i] < self.basic[leave]))
                    {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if leave == usize::MAX {
                return Some(SolveStatus::Unbounded);
            }
            let drop = rc[enter] * best_ratio; // objective change (<= 0)
            self.pivot(leave, enter);
            *pivots += 1;
            // Update the reduced-cost row from the new pivot row.
            let factor = rc[enter];
            if factor != 0.0 {
                for j in 0..self.width {
                    rc[j] -= factor * self.a[leave * self.width + j];
                }
                rc[enter] = 0.0;
                z += drop;
            }
            if drop.abs() <= 1e-13 * (1.0 + z.abs()) {
                stall += 1;
                if stall >= STALL_LIMIT {
                    bland = true;
                }
            } else {
                stall = 0;
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let p = self.a[row * w + col];
        let inv = 1.0 / p;
        for j in 0..w {
            self.a[row * w + j] *= inv;
        }
        self.a[row * w + col] = 1.0;
        self.b[row] *= inv;
        for i in 0..self.m {
            if i == row {
                continue;
            }
            let f = self.a[i * w + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..w {
                self.a[i * w + j] -= f * self.a[row * w + j];
            }
            self.a[i * w + col] = 0.0;
            self.b[i] -= f * self.b[row];
            if self.b[i] < 0.0 && self.b[i] > -1e-11 {
                self.b[i] = 0.0;
            }
        }
        self.basic[row] = col;
    }
}
