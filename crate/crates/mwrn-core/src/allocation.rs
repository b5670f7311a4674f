//! Per-block resource allocation: time split, power split, relay gain, and
//! per-user transmit powers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::channel::ChannelState;
use crate::params::SystemParams;
use crate::perf;

/// A complete DEBIT resource allocation for one transmission block.
///
/// * `alpha`: fraction of the multiple-access phase used by the
///   energy+information subphase (the rest is information-only).
/// * `theta`: relay power-splitting fraction sent to the harvester during the
///   first subphase.
/// * `omega`: relay amplify-and-forward gain (applied to both subphases).
/// * `energy_power[k]`: user `k` energy-signal power in the first subphase.
/// * `info_power_1[k]`: user `k` information power in the first subphase.
/// * `info_power_2[k]`: user `k` information power in the second subphase.
///
/// A valid allocation satisfies, per user, the average-power equality
/// `alpha * (p_E + p_1) + (1 - alpha) * p_2 = P_k`, the peak constraint
/// `p_E + p_1 <= P_peak`, and the relay budget
/// [`perf::relay_power_used`]` <= P_R`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Allocation {
    pub alpha: f64,
    pub theta: f64,
    pub omega: f64,
    pub energy_power: Vec<f64>,
    pub info_power_1: Vec<f64>,
    pub info_power_2: Vec<f64>,
}

impl Allocation {
    /// All-zero powers with the given scalars; handy as a building block.
    pub fn zeros(num_users: usize, alpha: f64, theta: f64, omega: f64) -> Self {
        Allocation {
            alpha,
            theta,
            omega,
            energy_power: vec![0.0; num_users],
            info_power_1: vec![0.0; num_users],
            info_power_2: vec![0.0; num_users],
        }
    }

    pub fn num_users(&self) -> usize {
        self.energy_power.len()
    }

    /// Check ranges, the per-user average-power equality, the peak constraint
    /// and the relay power budget. `tol` is relative (1e-9 is the library
    /// default elsewhere).
    pub fn validate(
        &self,
        params: &SystemParams,
        ch: &ChannelState,
        tol: f64,
    ) -> Result<(), AllocationError> {
        let k = params.num_users;
        if self.energy_power.len() != k
            || self.info_power_1.len() != k
            || self.info_power_2.len() != k
        {
            return Err(AllocationError::new("power vector length mismatch"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(AllocationError::new("alpha outside [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(AllocationError::new("theta outside [0, 1]"));
        }
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return Err(AllocationError::new("omega must be finite and >= 0"));
        }
        for i in 0..k {
            for (name, v) in [
                ("energy_power", self.energy_power[i]),
                ("info_power_1", self.info_power_1[i]),
                ("info_power_2", self.info_power_2[i]),
            ] {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(AllocationError::new(name));
                }
            }
            let avg = self.alpha * (self.energy_power[i] + self.info_power_1[i])
                + (1.0 - self.alpha) * self.info_power_2[i];
            let budget = params.user_power[i];
            if (avg - budget).abs() > tol * budget.max(1.0) {
                return Err(AllocationError::new("average power equality violated"));
            }
            let first = self.energy_power[i] + self.info_power_1[i];
            if first > params.peak_power * (1.0 + tol) {
                return Err(AllocationError::new("peak power exceeded"));
            }
        }
        let used = perf::relay_power_used(self, ch, params);
        if used > params.relay_power * (1.0 + tol) {
            return Err(AllocationError::new("relay power budget exceeded"));
        }
        Ok(())
    }
}

/// Invalid allocation description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationError {
    what: String,
}

impl AllocationError {
    fn new(what: &str) -> Self {
        AllocationError { what: String::from(what) }
    }
}

impl fmt::Display for AllocationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid allocation: {}", self.what)
    }
}

impl core::error::Error for AllocationError {}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_setup() -> (SystemParams, ChannelState) {
        let mut p = SystemParams::defaults(2);
        p.avg_gain = 1.0;
        let ch = ChannelState::from_magnitudes(&[1.0, 2.0]);
        (p, ch)
    }

    #[test]
    fn valid_allocation_passes() {
        let (p, ch) = small_setup();
        // alpha = 0.5: p_E + p_1 = 1.6, p_2 = 0.4 -> 0.5*1.6 + 0.5*0.4 = 1.0.
        let a = Allocation {
            alpha: 0.5,
            theta: 0.5,
            omega: 0.1,
            energy_power: vec![1.0, 1.0],
            info_power_1: vec![0.6, 0.6],
            info_power_2: vec![0.4, 0.4],
        };
        a.validate(&p, &ch, 1e-9).unwrap();
    }

    #[test]
    fn power_equality_violation_rejected() {
        let (p, ch) = small_setup();
        let a = Allocation {
            alpha: 0.5,
            theta: 0.5,
            omega: 0.1,
            energy_power: vec![1.0, 1.0],
            info_power_1: vec![0.6, 0.6],
            info_power_2: vec![0.4, 0.5],
        };
        assert!(a.validate(&p, &ch, 1e-9).is_err());
    }

    #[test]
    fn peak_violation_rejected() {
        let (mut p, ch) = small_setup();
        p.peak_power = 1.5;
        let a = Allocation {
            alpha: 0.5,
            theta: 0.5,
            omega: 0.1,
            energy_power: vec![1.0, 1.0],
            info_power_1: vec![0.6, 0.6],
            info_power_2: vec![0.4, 0.4],
        };
        assert!(a.validate(&p, &ch, 1e-9).is_err());
    }

    #[test]
    fn relay_budget_violation_rejected() {
        let (p, ch) = small_setup();
        let a = Allocation {
            alpha: 0.5,
            theta: 0.5,
            omega: 1e9,
            energy_power: vec![1.0, 1.0],
            info_power_1: vec![0.6, 0.6],
            info_power_2: vec![0.4, 0.4],
        };
        assert!(a.validate(&p, &ch, 1e-9).is_err());
    }

    #[test]
    fn range_violations_rejected() {
        let (p, ch) = small_setup();
        let mut a = Allocation::zeros(2, 1.1, 0.5, 0.0);
        assert!(a.validate(&p, &ch, 1e-9).is_err());
        a.alpha = 0.5;
        a.theta = -0.1;
        assert!(a.validate(&p, &ch, 1e-9).is_err());
        a.theta = 0.5;
        a.energy_power[0] = -1.0;
        assert!(a.validate(&p, &ch, 1e-9).is_err());
    }
}
