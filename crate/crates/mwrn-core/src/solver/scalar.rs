//! Scalar search: golden-section maximization (optionally preceded by a
//! coarse bracketing scan) and bisection, all with fixed deterministic
//! iteration schedules.

use alloc::string::String;
use core::fmt;
use num_traits::Float;

/// Inverse golden ratio, `(sqrt(5) - 1) / 2`.
const INV_PHI: f64 = 0.618033988749894848;

/// Maximize `f` on `[lo, hi]` by golden-section search with `iters`
/// interior evaluations (plus the two endpoints). Returns `(x, f(x))` for the
/// best point seen. Unimodality gives the global optimum; otherwise this is a
/// deterministic local refinement.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut best = (lo, f(lo));
    let fhi = f(hi);
    if fhi > best.1 {
        best = (hi, fhi);
    }
    if hi - lo <= 0.0 || iters == 0 {
        return best;
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    if fc > best.1 {
        best = (c, fc);
    }
    if fd > best.1 {
        best = (d, fd);
    }
    for _ in 2..iters.max(2) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// Maximize `f` on `[lo, hi]`: evaluate a uniform scan of `scan_points`
/// points (endpoints included), then golden-refine the bracket around the
/// best scan point with `golden_iters` evaluations.
pub fn scan_golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    scan_points: usize,
    golden_iters: usize,
) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let n = scan_points.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        let x = if i + 1 == n { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let bracket_lo = if best_i == 0 { lo } else { lo + step * (best_i - 1) as f64 };
    let bracket_hi = if best_i + 1 >= n { hi } else { lo + step * (best_i + 1) as f64 };
    let (x, v) = golden_max(&mut f, bracket_lo, bracket_hi, golden_iters);
    let best_x = if best_i + 1 == n { hi } else { lo + step * best_i as f64 };
    if best > v {
        (best_x, best)
    } else {
        (x, v)
    }
}

/// Find a root of `f` on `[lo, hi]` by bisection to interval width `tol`.
/// Requires a sign change between the endpoints.
pub fn bisect_root<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, ScalarError> {
    if !(lo < hi) {
        return Err(ScalarError::new("invalid interval"));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(ScalarError::new("no sign change on interval"));
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break; // interval at floating-point resolution
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Find the boundary of a monotone feasibility predicate by bisection:
/// `pred` must hold at `feasible_end`. Returns the point nearest the boundary
/// (within `tol`) at which `pred` still holds, searching toward
/// `infeasible_end`. If `pred` also holds at `infeasible_end`, that end is
/// returned directly.
pub fn bisect_boundary<F: FnMut(f64) -> bool>(
    mut pred: F,
    feasible_end: f64,
    infeasible_end: f64,
    tol: f64,
) -> f64 {
    debug_assert!(pred(feasible_end), "predicate must hold at feasible_end");
    if pred(infeasible_end) {
        return infeasible_end;
    }
    let mut good = feasible_end;
    let mut bad = infeasible_end;
    while (bad - good).abs() > tol {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarError {
    what: String,
}

impl ScalarError {
    fn new(what: &str) -> Self {
        ScalarError { what: String::from(what) }
    }
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scalar search failed: {}", self.what)
    }
}

impl core::error::Error for ScalarError {}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 40);
        assert_relative_eq!(x, 0.3, epsilon = 1e-6);
        assert!(v <= 0.0 && v > -1e-12);
    }

    #[test]
    fn golden_handles_boundary_max() {
        let (x, _) = golden_max(|x| x, 0.0, 2.0, 30);
        assert_relative_eq!(x, 2.0, epsilon = 1e-9);
        let (x, _) = golden_max(|x| -x, 0.0, 2.0, 30);
        assert_relative_eq!(x, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn scan_golden_beats_local_trap() {
        // Bimodal: golden alone from the full interval may settle on the
        // wrong lobe; the scan brackets the global one.
        let f = |x: f64| (-(x - 0.1) * (x - 0.1) / 0.002).exp() + 0.6 * (-(x - 0.8) * (x - 0.8) / 0.05).exp();
        let (x, _) = scan_golden_max(f, 0.0, 1.0, 21, 40);
        assert_relative_eq!(x, 0.1, epsilon = 1e-4);
    }

    #[test]
    fn bisect_root_sqrt2() {
        let r = bisect_root(|x| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert_relative_eq!(r, core::f64::consts::SQRT_2, epsilon = 1e-11);
    }

    #[test]
    fn bisect_root_requires_sign_change() {
        assert!(bisect_root(|x| x * x + 1.0, -1.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn boundary_search_monotone_predicate() {
        let b = bisect_boundary(|x| x <= 0.7321, 0.0, 1.0, 1e-9);
        assert_relative_eq!(b, 0.7321, epsilon = 1e-8);
        // Fully feasible interval returns the far end.
        let b = bisect_boundary(|x| x <= 2.0, 0.0, 1.0, 1e-9);
        assert_relative_eq!(b, 1.0);
    }
}
