//! Resource allocation and performance analysis for a wireless-powered
//! amplify-and-forward multiway relay network (MWRN).
//!
//! `K` single-antenna users exchange messages through one energy-harvesting
//! relay using a DEBIT scheme (distributed energy beamforming and information
//! transfer): the multiple-access phase is split into an energy+information
//! subphase of duration `alpha*T` and an information-only subphase of duration
//! `(1-alpha)*T`. The relay power-splits its first-subphase input (fraction
//! `theta` to the harvester), then amplifies-and-forwards both subphases with
//! gain `omega`.
//!
//! The crate provides:
//!
//! * [`params`]/[`channel`]/[`allocation`] — the system model: parameters,
//!   Rayleigh channel realizations, and per-user power/time allocations.
//! * [`perf`] — harvested power, relay transmit power, and the achievable
//!   exchange-rate bounds for any allocation.
//! * [`solver`] — deterministic dense-simplex LP, Kelley cutting-plane solver
//!   for concave programs, and scalar search (golden section, bisection).
//! * [`optim`] — the four resource-allocation problems: sum-rate maximization
//!   (joint and closed-form suboptimal), harvested-energy maximization (joint
//!   and suboptimal), plus a conventional power-splitting SWIPT baseline.
//! * [`analysis`] — closed-form lower bounds and asymptotics for the average
//!   sum rate and average harvested power, with the special functions
//!   (normal CDF, exponential integral, truncated-normal mean) they need.
//!
//! Everything is `no_std` + `alloc` and fully deterministic: identical inputs
//! produce identical outputs bit for bit, independent of threading in any
//! host application.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod allocation;
pub mod analysis;
pub mod channel;
pub mod optim;
pub mod params;
pub mod perf;
pub mod solver;

pub use allocation::Allocation;
pub use channel::ChannelState;
pub use params::{dbm_to_watts, watts_to_dbm, SystemParams, Targets};
