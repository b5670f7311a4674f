//! Deterministic numerical solvers: dense two-phase simplex LP, Kelley
//! cutting planes for concave programs, and scalar search primitives.
//!
//! Everything here is allocation-only (`no_std` + `alloc`) and bit-for-bit
//! deterministic: fixed pivot rules with lowest-index tie-breaking, no
//! randomization, no data-dependent thread interactions.

mod kelley;
mod lp;
mod scalar;

pub use kelley::{solve_concave_program, ConcaveProgram, Cut, CutOracle, FnOracle, KelleySettings};
pub use lp::{solve_lp, LinearConstraint, LinearProgram, Relation, SolveStatus, SolverReport};
pub use scalar::{bisect_boundary, bisect_root, golden_max, scan_golden_max, ScalarError};
