//! System parameters, optimization targets, and power-unit conversions.
//!
//! Internally every power is in watts and every rate in bits/s/Hz; dBm only
//! appears at API boundaries through [`dbm_to_watts`]/[`watts_to_dbm`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Float;

/// Convert a power from dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Convert a power from watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Static system-level parameters of the K-user MWRN.
///
/// Defaults follow a standard evaluation setup: `K = 8` users at distance
/// 10 m with path loss `1e-2 * d^-3` (so average channel power gain
/// `G = 1e-5`), per-user average power 30 dBm, relay power `K * P`,
/// peak power `10 * P`, first-subphase relay noise components -43 dBm each,
/// second-subphase relay noise and user noise -40 dBm, harvester efficiency
/// 0.7, unit phase duration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SystemParams {
    /// Number of users `K`.
    pub num_users: usize,
    /// Per-user average transmit power budget `P_k` (watts), length `K`.
    pub user_power: Vec<f64>,
    /// Relay transmit power budget `P_R` (watts).
    pub relay_power: f64,
    /// Per-user peak transmit power `P_peak` (watts).
    pub peak_power: f64,
    /// RF-band (antenna) noise variance at the relay, first subphase (watts).
    /// This component passes through the power splitter.
    pub rf_noise: f64,
    /// Conversion noise variance at the relay added after power splitting,
    /// first subphase (watts).
    pub conversion_noise: f64,
    /// Relay noise variance in the information-only subphase (watts).
    pub relay_noise: f64,
    /// Receive noise variance at each user (watts).
    pub user_noise: f64,
    /// RF-to-DC energy harvesting efficiency `eta` in (0, 1].
    pub eta: f64,
    /// Average channel power gain `G = E|h_k|^2` (includes path loss).
    pub avg_gain: f64,
    /// User-relay distance in metres (informational; `with_distance` derives
    /// `avg_gain` from it).
    pub distance: f64,
    /// Duration `T` of one full transmission phase (seconds). Rates are
    /// normalized per unit time and bandwidth, so `T` does not enter the
    /// rate/energy expressions; it is kept for completeness.
    pub phase_duration: f64,
}

impl SystemParams {
    /// Default parameter set for `num_users` users (see type-level docs).
    pub fn defaults(num_users: usize) -> Self {
        let p = 1.0; // 30 dBm
        SystemParams {
            num_users,
            user_power: vec![p; num_users],
            relay_power: num_users as f64 * p,
            peak_power: 10.0 * p,
            rf_noise: dbm_to_watts(-43.0),
            conversion_noise: dbm_to_watts(-43.0),
            relay_noise: dbm_to_watts(-40.0),
            user_noise: dbm_to_watts(-40.0),
            eta: 0.7,
            avg_gain: 1e-5,
            distance: 10.0,
            phase_duration: 1.0,
        }
    }

    /// Set the user-relay distance and derive the average channel power gain
    /// from the `1e-2 * d^-3` path-loss model.
    pub fn with_distance(mut self, d: f64) -> Self {
        self.distance = d;
        self.avg_gain = 1e-2 * d.powi(-3);
        self
    }

    /// Validate positivity/shape requirements.
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.num_users < 2 {
            return Err(ParamError::new("num_users must be at least 2"));
        }
        if self.user_power.len() != self.num_users {
            return Err(ParamError::new("user_power length must equal num_users"));
        }
        let all_pos = self.user_power.iter().all(|&p| p > 0.0 && p.is_finite());
        if !all_pos {
            return Err(ParamError::new("user powers must be positive and finite"));
        }
        for (name, v) in [
            ("relay_power", self.relay_power),
            ("peak_power", self.peak_power),
            ("rf_noise", self.rf_noise),
            ("conversion_noise", self.conversion_noise),
            ("relay_noise", self.relay_noise),
            ("user_noise", self.user_noise),
            ("avg_gain", self.avg_gain),
            ("phase_duration", self.phase_duration),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ParamError::new(name));
            }
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(ParamError::new("eta must be in (0, 1]"));
        }
        Ok(())
    }

    /// Effective first-subphase relay noise after power splitting:
    /// `(1 - theta) * rf_noise + conversion_noise`.
    pub fn split_noise(&self, theta: f64) -> f64 {
        (1.0 - theta) * self.rf_noise + self.conversion_noise
    }

    /// True when every user has the same average power budget (the
    /// closed-form average-performance bounds assume this).
    pub fn symmetric_power(&self) -> bool {
        let p0 = self.user_power[0];
        self.user_power
            .iter()
            .all(|&p| (p - p0).abs() <= 1e-12 * p0.max(1.0))
    }
}

/// Optimization targets for the resource-allocation problems.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Targets {
    /// Required harvested power `P_EH0` (watts) for the sum-rate problems.
    pub harvest_target: f64,
    /// Required total exchange rate `R_sum0` (bits/s/Hz) for the
    /// harvest-maximization problems.
    pub sum_rate_target: f64,
}

impl Targets {
    pub fn harvest(p_eh0: f64) -> Self {
        Targets { harvest_target: p_eh0, sum_rate_target: 0.0 }
    }

    pub fn sum_rate(r_sum0: f64) -> Self {
        Targets { harvest_target: 0.0, sum_rate_target: r_sum0 }
    }

    /// SNR-like threshold `xi0 = 2^(2 R_sum0) - 1` implied by the sum-rate
    /// target when all rate is carried by the information-only subphase.
    pub fn xi0(&self) -> f64 {
        (2f64).powf(2.0 * self.sum_rate_target) - 1.0
    }

    /// Normalized threshold `nu0 = xi0 * user_noise / (G * P)` used by the
    /// average-harvest lower bound (assumes symmetric user power).
    pub fn nu0(&self, params: &SystemParams) -> f64 {
        self.xi0() * params.user_noise / (params.avg_gain * params.user_power[0])
    }

    /// Channel-feasibility threshold `c0 = sqrt(P_EH0 / (eta * P))`: the
    /// energy-beamforming harvest target is reachable iff `sum_k |h_k| >= c0`
    /// (assumes symmetric user power).
    pub fn c0(&self, params: &SystemParams) -> f64 {
        (self.harvest_target / (params.eta * params.user_power[0])).sqrt()
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.harvest_target >= 0.0 && self.harvest_target.is_finite()) {
            return Err(ParamError::new("harvest_target must be >= 0 and finite"));
        }
        if !(self.sum_rate_target >= 0.0 && self.sum_rate_target.is_finite()) {
            return Err(ParamError::new("sum_rate_target must be >= 0 and finite"));
        }
        Ok(())
    }
}

/// Invalid parameter or target description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamError {
    what: String,
}

impl ParamError {
    fn new(what: &str) -> Self {
        ParamError { what: String::from(what) }
    }
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid parameter: {}", self.what)
    }
}

impl core::error::Error for ParamError {}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dbm_conversions_match_known_values() {
        assert_relative_eq!(dbm_to_watts(30.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(dbm_to_watts(-40.0), 1e-7, max_relative = 1e-14);
        // -43 dBm, the default first-subphase relay noise level.
        assert_relative_eq!(dbm_to_watts(-43.0), 5.0119e-8, max_relative = 1e-4);
        assert_relative_eq!(dbm_to_watts(-12.0), 6.3096e-5, max_relative = 1e-4);
    }

    #[test]
    fn dbm_round_trip_is_identity() {
        for &w in &[1e-9, 5.0119e-8, 1e-7, 6.31e-5, 0.5, 1.0, 8.0, 123.456] {
            assert_relative_eq!(dbm_to_watts(watts_to_dbm(w)), w, max_relative = 1e-12);
        }
        for &d in &[-90.0, -43.0, -12.0, 0.0, 17.5, 30.0, 41.0] {
            assert_relative_eq!(watts_to_dbm(dbm_to_watts(d)), d, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn defaults_match_reference_setup() {
        let p = SystemParams::defaults(8);
        p.validate().unwrap();
        assert_eq!(p.num_users, 8);
        assert_relative_eq!(p.user_power[0], 1.0);
        assert_relative_eq!(p.relay_power, 8.0);
        assert_relative_eq!(p.peak_power, 10.0);
        assert_relative_eq!(p.avg_gain, 1e-5, max_relative = 1e-12);
        assert_relative_eq!(p.user_noise, 1e-7, max_relative = 1e-12);
        assert!(p.symmetric_power());
    }

    #[test]
    fn distance_drives_gain() {
        let p = SystemParams::defaults(4).with_distance(10.0);
        assert_relative_eq!(p.avg_gain, 1e-5, max_relative = 1e-12);
        let p = p.with_distance(20.0);
        assert_relative_eq!(p.avg_gain, 1e-2 / 8000.0, max_relative = 1e-12);
    }

    #[test]
    fn split_noise_combines_components() {
        let p = SystemParams::defaults(4);
        // theta = 1: only the conversion component remains.
        assert_relative_eq!(p.split_noise(1.0), p.conversion_noise);
        assert_relative_eq!(p.split_noise(0.0), p.rf_noise + p.conversion_noise);
    }

    #[test]
    fn target_thresholds() {
        let p = SystemParams::defaults(8);
        let t = Targets::sum_rate(2.5);
        assert_relative_eq!(t.xi0(), 31.0, max_relative = 1e-12);
        assert_relative_eq!(t.nu0(&p), 31.0 * 1e-7 / 1e-5, max_relative = 1e-10);
        let t = Targets::harvest(dbm_to_watts(-12.0));
        assert_relative_eq!(t.c0(&p), (6.309573e-5f64 / 0.7).sqrt(), max_relative = 1e-6);
    }

    #[test]
    fn invalid_params_rejected() {
        let mut p = SystemParams::defaults(4);
        p.eta = 0.0;
        assert!(p.validate().is_err());
        let mut p = SystemParams::defaults(4);
        p.user_power[2] = -1.0;
        assert!(p.validate().is_err());
        let mut p = SystemParams::defaults(4);
        p.user_power.pop();
        assert!(p.validate().is_err());
        assert!(SystemParams::defaults(1).validate().is_err());
    }
}
