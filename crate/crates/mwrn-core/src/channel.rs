//! Channel realizations for the user-relay links.
//!
//! Each user-relay channel is flat block-fading, circularly-symmetric complex
//! Gaussian `h_k ~ CN(0, G)`, reciprocal in both subphases of a transmission
//! block. Magnitudes are therefore Rayleigh with `E|h_k| = sqrt(pi G / 4)`
//! and `Var|h_k| = (4 - pi) G / 4`, and `|h_k|^2` is exponential with mean
//! `G`. Users pre-compensate their channel phase toward the relay, so every
//! performance expression depends on magnitudes only; the complex gains are
//! retained for completeness.
//!
//! Sampling is deterministic: a `ChaCha8` stream seeded with a caller-chosen
//! 64-bit seed, mapped to Gaussians with Box-Muller. Identical seeds produce
//! identical channel states on every platform.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::params::SystemParams;

/// One realization of the `K` user-relay channels.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChannelState {
    /// Complex channel gains `h_k`, length `K`.
    pub gains: Vec<Complex64>,
    /// Channel magnitudes `|h_k|`, same order as `gains`.
    pub magnitude: Vec<f64>,
    /// User indices sorted by ascending magnitude (ties broken by index):
    /// `order[0]` is the weakest user `pi(1)`.
    pub order: Vec<usize>,
}

impl ChannelState {
    /// Build a state from explicit complex gains.
    pub fn new(gains: Vec<Complex64>) -> Self {
        let magnitude: Vec<f64> = gains.iter().map(|h| h.norm()).collect();
        let order = sort_by_magnitude(&magnitude);
        ChannelState { gains, magnitude, order }
    }

    /// Build a state from channel magnitudes only (zero phases).
    pub fn from_magnitudes(mags: &[f64]) -> Self {
        ChannelState::new(mags.iter().map(|&m| Complex64::new(m, 0.0)).collect())
    }

    pub fn num_users(&self) -> usize {
        self.gains.len()
    }

    /// Power gain `|h_k|^2` of user `k`.
    pub fn power_gain(&self, k: usize) -> f64 {
        self.magnitude[k] * self.magnitude[k]
    }

    /// Smallest power gain `|h_pi(1)|^2` over the users.
    pub fn sorted_min_gain(&self) -> f64 {
        self.power_gain(self.order[0])
    }

    /// `sum_k |h_k|`, the energy-beamforming channel aggregate.
    pub fn magnitude_sum(&self) -> f64 {
        self.magnitude.iter().sum()
    }

    /// `sum_k |h_k|^2`.
    pub fn power_gain_sum(&self) -> f64 {
        self.magnitude.iter().map(|m| m * m).sum()
    }
}

/// Sample the `K` channels `h_k ~ CN(0, G)` for `params`, deterministically
/// from `seed`.
pub fn sample_channels(params: &SystemParams, seed: u64) -> ChannelState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = (params.avg_gain / 2.0).sqrt();
    let mut gains = Vec::with_capacity(params.num_users);
    for _ in 0..params.num_users {
        let (re, im) = gaussian_pair(&mut rng);
        gains.push(Complex64::new(sigma * re, sigma * im));
    }
    ChannelState::new(gains)
}

/// Draw two independent standard Gaussians via Box-Muller.
pub(crate) fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // u1 in (0, 1] so the log is finite; u2 in [0, 1).
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / 9007199254740992.0);
    let u2 = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (2.0 * PI * u2).sin_cos();
    (r * c, r * s)
}

fn sort_by_magnitude(mags: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..mags.len()).collect();
    idx.sort_by(|&a, &b| {
        mags[a]
            .partial_cmp(&mags[b])
            .expect("channel magnitudes are finite")
            .then(a.cmp(&b))
    });
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn same_seed_same_channels() {
        let p = SystemParams::defaults(8);
        let a = sample_channels(&p, 42);
        let b = sample_channels(&p, 42);
        assert_eq!(a, b);
        let c = sample_channels(&p, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn order_is_ascending_with_index_ties() {
        let ch = ChannelState::from_magnitudes(&[2.0, 1.0, 1.0, 0.5]);
        assert_eq!(ch.order, alloc::vec![3, 1, 2, 0]);
        assert_relative_eq!(ch.sorted_min_gain(), 0.25);
    }

    #[test]
    fn rayleigh_moments_match_theory() {
        // E|h| = sqrt(pi G / 4), Var|h| = (4 - pi) G / 4, E|h|^2 = G.
        let mut p = SystemParams::defaults(2);
        p.avg_gain = 1e-5;
        let n = 200_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for seed in 0..n {
            let ch = sample_channels(&p, seed);
            for k in 0..2 {
                s1 += ch.magnitude[k];
                s2 += ch.power_gain(k);
            }
        }
        let m1 = s1 / (2 * n) as f64;
        let m2 = s2 / (2 * n) as f64;
        let mean_theory = (PI * p.avg_gain / 4.0).sqrt();
        let var_theory = (4.0 - PI) * p.avg_gain / 4.0;
        assert_relative_eq!(m1, mean_theory, max_relative = 5e-3);
        assert_relative_eq!(m2, p.avg_gain, max_relative = 5e-3);
        assert_relative_eq!(m2 - m1 * m1, var_theory, max_relative = 2e-2);
    }

    #[test]
    fn gaussian_pair_is_standard_normal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 500_000;
        let (mut s1, mut s2, mut s4) = (0.0, 0.0, 0.0);
        for _ in 0..n {
            let (a, b) = gaussian_pair(&mut rng);
            for z in [a, b] {
                s1 += z;
                s2 += z * z;
                s4 += z * z * z * z;
            }
        }
        let m = 2.0 * n as f64;
        assert!((s1 / m).abs() < 5e-3, "mean {} too far from 0", s1 / m);
        assert_relative_eq!(s2 / m, 1.0, max_relative = 5e-3);
        // Fourth moment of a standard normal is 3.
        assert_relative_eq!(s4 / m, 3.0, max_relative = 2e-2);
    }
}
