//! Performance functions of an allocation on one channel realization:
//! harvested power at the relay, relay transmit power, achievable
//! exchange-rate bounds, and the SIC-achievable sum rate.
//!
//! Rate model: after self-interference cancellation, receiver `k` decodes the
//! other users' messages from the relay's amplified broadcast. For any
//! nonempty subset `S` of the other users, the cut bound is
//!
//! ```text
//! R_{k,S} = alpha     * C( (1-theta) omega |h_k|^2 X1_S / (omega |h_k|^2 n1 + sigma^2) )
//!         + (1-alpha) * C(           omega |h_k|^2 X2_S / (omega |h_k|^2 nR + sigma^2) )
//! ```
//!
//! with `C(x) = (1/2) log2(1 + x)`, `X{1,2}_S = sum_{m in S} |h_m|^2 p_{m,{1,2}}`,
//! `n1 = (1-theta) * rf_noise + conversion_noise`, and `nR` the second-subphase
//! relay noise. A rate vector is achievable iff
//! `sum_{m in S} R_m <= R_{k,S}` for every receiver `k` and subset `S`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Float;

use crate::allocation::Allocation;
use crate::channel::ChannelState;
use crate::params::SystemParams;

/// Shannon-type capacity with the half pre-log of two-phase relaying:
/// `C(x) = 0.5 * log2(1 + x)`, computed via `ln_1p` for accuracy near 0.
pub fn capacity(x: f64) -> f64 {
    0.5 * x.ln_1p() / core::f64::consts::LN_2
}

/// Power harvested by the relay during the first subphase:
/// `alpha * theta * eta * ((sum_k sqrt(p_{k,E}) |h_k|)^2 + sum_k p_{k,1} |h_k|^2)`.
///
/// The energy signals are identical across users up to phase pre-compensation,
/// so their amplitudes add coherently (distributed energy beamforming); the
/// information signals are independent and add in power only.
pub fn harvested_power(alloc: &Allocation, ch: &ChannelState, params: &SystemParams) -> f64 {
    let mut amp = 0.0;
    let mut info = 0.0;
    for k in 0..alloc.num_users() {
        amp += alloc.energy_power[k].sqrt() * ch.magnitude[k];
        info += alloc.info_power_1[k] * ch.power_gain(k);
    }
    alloc.alpha * alloc.theta * params.eta * (amp * amp + info)
}

/// Average relay transmit power used by gain `omega`:
/// `omega * [alpha ((1-theta) sum p_1 |h|^2 + n1) + (1-alpha)(sum p_2 |h|^2 + nR)]`.
pub fn relay_power_used(alloc: &Allocation, ch: &ChannelState, params: &SystemParams) -> f64 {
    let mut x1 = 0.0;
    let mut x2 = 0.0;
    for k in 0..alloc.num_users() {
        x1 += alloc.info_power_1[k] * ch.power_gain(k);
        x2 += alloc.info_power_2[k] * ch.power_gain(k);
    }
    let first = (1.0 - alloc.theta) * x1 + params.split_noise(alloc.theta);
    let second = x2 + params.relay_noise;
    alloc.omega * (alloc.alpha * first + (1.0 - alloc.alpha) * second)
}

/// Per-receiver SINR scale factors for fixed `(alpha, theta, omega)`:
/// `R_{k,S} = alpha C(c1[k] * X1_S) + (1-alpha) C(c2[k] * X2_S)`.
///
/// Precomputing these turns every subset-rate evaluation into two fused
/// multiply-log operations, which the subset-enumeration loops rely on.
#[derive(Debug, Clone)]
pub struct RateCoeffs {
    pub alpha: f64,
    /// First-subphase SINR factor per receiver, `(1-theta) w a_k / (w a_k n1 + s2)`.
    pub c1: Vec<f64>,
    /// Second-subphase SINR factor per receiver, `w a_k / (w a_k nR + s2)`.
    pub c2: Vec<f64>,
}

impl RateCoeffs {
    pub fn new(
        alpha: f64,
        theta: f64,
        omega: f64,
        ch: &ChannelState,
        params: &SystemParams,
    ) -> Self {
        let n1 = params.split_noise(theta);
        let nr = params.relay_noise;
        let s2 = params.user_noise;
        let mut c1 = Vec::with_capacity(ch.num_users());
        let mut c2 = Vec::with_capacity(ch.num_users());
        for k in 0..ch.num_users() {
            let wa = omega * ch.power_gain(k);
            c1.push((1.0 - theta) * wa / (wa * n1 + s2));
            c2.push(wa / (wa * nr + s2));
        }
        RateCoeffs { alpha, c1, c2 }
    }

    /// Rate bound for receiver `k` given subset signal sums `x1 = X1_S`,
    /// `x2 = X2_S`.
    #[inline]
    pub fn rate(&self, k: usize, x1: f64, x2: f64) -> f64 {
        let mut r = 0.0;
        if self.alpha > 0.0 {
            r += self.alpha * capacity(self.c1[k] * x1);
        }
        if self.alpha < 1.0 {
            r += (1.0 - self.alpha) * capacity(self.c2[k] * x2);
        }
        r
    }

    /// Derivative of the rate bound with respect to `x1` and `x2`.
    #[inline]
    pub fn rate_grad(&self, k: usize, x1: f64, x2: f64) -> (f64, f64) {
        const HALF_LOG2E: f64 = 0.5 / core::f64::consts::LN_2;
        let g1 = self.alpha * HALF_LOG2E * self.c1[k] / (1.0 + self.c1[k] * x1);
        let g2 = (1.0 - self.alpha) * HALF_LOG2E * self.c2[k] / (1.0 + self.c2[k] * x2);
        (g1, g2)
    }
}

/// Exchange-rate cut bound `R_{k,S}` for receiver `k` and the user subset
/// encoded by `mask` (bit `m` set means user `m` is in `S`; bit `k` must be
/// clear and the mask nonempty).
pub fn rate_for_subset(
    alloc: &Allocation,
    ch: &ChannelState,
    params: &SystemParams,
    k: usize,
    mask: u64,
) -> f64 {
    debug_assert!(mask != 0 && mask & (1 << k) == 0, "S must be a nonempty subset excluding k");
    let coeffs = RateCoeffs::new(alloc.alpha, alloc.theta, alloc.omega, ch, params);
    let (x1, x2) = subset_signal_sums(alloc, ch, mask);
    coeffs.rate(k, x1, x2)
}

fn subset_signal_sums(alloc: &Allocation, ch: &ChannelState, mask: u64) -> (f64, f64) {
    let mut x1 = 0.0;
    let mut x2 = 0.0;
    let mut bits = mask;
    while bits != 0 {
        let m = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        x1 += alloc.info_power_1[m] * ch.power_gain(m);
        x2 += alloc.info_power_2[m] * ch.power_gain(m);
    }
    (x1, x2)
}

/// How to generate the family of `(k, S)` cut constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFamily {
    /// Every nonempty subset of the other users, for every receiver
    /// (`K * (2^(K-1) - 1)` bounds). Only allowed for `K <= 16`.
    Full,
    /// Singletons, the full set, and nested subsets in descending
    /// per-user weight `|h_m|^2 (p_{m,1} + p_{m,2})` order, for every
    /// receiver (`O(K^2)` bounds). Used for large `K`.
    Restricted,
}

/// Materialized map from `(k, mask)` to the cut bound `R_{k,S}`.
#[derive(Debug, Clone)]
pub struct RateBoundSet {
    pub family: BoundFamily,
    /// `per_receiver[k]` holds `(mask, bound)` pairs sorted by mask.
    pub per_receiver: Vec<Vec<(u64, f64)>>,
}

impl RateBoundSet {
    /// Build the bound set for `alloc` on `ch`. `Full` requires `K <= 16`.
    pub fn build(
        alloc: &Allocation,
        ch: &ChannelState,
        params: &SystemParams,
        family: BoundFamily,
    ) -> Result<Self, CapacityError> {
        let k_users = ch.num_users();
        let coeffs = RateCoeffs::new(alloc.alpha, alloc.theta, alloc.omega, ch, params);
        let w1: Vec<f64> = (0..k_users)
            .map(|m| alloc.info_power_1[m] * ch.power_gain(m))
            .collect();
        let w2: Vec<f64> = (0..k_users)
            .map(|m| alloc.info_power_2[m] * ch.power_gain(m))
            .collect();
        let masks = match family {
            BoundFamily::Full => {
                if k_users > 16 {
                    return Err(CapacityError { num_users: k_users });
                }
                full_masks(k_users)
            }
            BoundFamily::Restricted => restricted_masks(k_users, &|m| w1[m] + w2[m]),
        };
        let mut per_receiver = Vec::with_capacity(k_users);
        for k in 0..k_users {
            let mut rows: Vec<(u64, f64)> = Vec::with_capacity(masks[k].len());
            for &mask in &masks[k] {
                let (mut x1, mut x2) = (0.0, 0.0);
                let mut bits = mask;
                while bits != 0 {
                    let m = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    x1 += w1[m];
                    x2 += w2[m];
                }
                rows.push((mask, coeffs.rate(k, x1, x2)));
            }
            rows.sort_by_key(|&(mask, _)| mask);
            per_receiver.push(rows);
        }
        Ok(RateBoundSet { family, per_receiver })
    }

    /// Look up `R_{k,S}`; `None` when the pair is not in the generated family.
    pub fn get(&self, k: usize, mask: u64) -> Option<f64> {
        let rows = &self.per_receiver[k];
        rows.binary_search_by_key(&mask, |&(m, _)| m)
            .ok()
            .map(|i| rows[i].1)
    }

    /// Total number of stored bounds.
    pub fn len(&self) -> usize {
        self.per_receiver.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Iterate `(k, mask, bound)` in deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64, f64)> + '_ {
        self.per_receiver
            .iter()
            .enumerate()
            .flat_map(|(k, rows)| rows.iter().map(move |&(m, b)| (k, m, b)))
    }
}

/// Full-enumeration request beyond the supported user count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityError {
    pub num_users: usize,
}

impl fmt::Display for CapacityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "full subset enumeration supports at most 16 users, got {}",
            self.num_users
        )
    }
}

impl core::error::Error for CapacityError {}

fn full_masks(k_users: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(k_users);
    for k in 0..k_users {
        let others: Vec<usize> = (0..k_users).filter(|&m| m != k).collect();
        let mut masks = Vec::with_capacity((1usize << others.len()) - 1);
        for bits in 1u64..(1u64 << others.len()) {
            let mut mask = 0u64;
            let mut b = bits;
            while b != 0 {
                let i = b.trailing_zeros() as usize;
                b &= b - 1;
                mask |= 1 << others[i];
            }
            masks.push(mask);
        }
        out.push(masks);
    }
    out
}

/// Singletons, full set, and nested prefixes of the others sorted by
/// descending `weight(m)` (ties by index).
fn restricted_masks(k_users: usize, weight: &dyn Fn(usize) -> f64) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(k_users);
    for k in 0..k_users {
        let mut others: Vec<usize> = (0..k_users).filter(|&m| m != k).collect();
        others.sort_by(|&a, &b| {
            weight(b)
                .partial_cmp(&weight(a))
                .expect("weights are finite")
                .then(a.cmp(&b))
        });
        let mut masks: Vec<u64> = Vec::new();
        for &m in &others {
            masks.push(1u64 << m);
        }
        let mut prefix = 0u64;
        for &m in &others {
            prefix |= 1u64 << m;
            masks.push(prefix);
        }
        masks.sort_unstable();
        masks.dedup();
        out.push(masks);
    }
    out
}

/// Sum rate achievable with successive interference cancellation, organized
/// so the worst-channel user `pi(1)` is the bottleneck:
/// the other `K - 1` users jointly achieve the full cut bound
/// `R_{pi(1), S_pi(1)}` at receiver `pi(1)`, and user `pi(1)` achieves the
/// rate decodable at receiver `pi(2)` when decoded first (all remaining users
/// acting as interference).
///
/// The result always lies between the per-realization closed-form lower bound
/// and the LP optimum over the full rate region for the same allocation.
pub fn sic_sum_rate(alloc: &Allocation, ch: &ChannelState, params: &SystemParams) -> f64 {
    let k_users = ch.num_users();
    debug_assert!(k_users >= 2);
    let p1 = ch.order[0];
    let p2 = ch.order[1];

    // Full cut bound at the weakest receiver.
    let full_mask: u64 = ((1u64 << k_users) - 1) & !(1u64 << p1);
    let r_others = rate_for_subset(alloc, ch, params, p1, full_mask);

    // Rate of pi(1) decoded first at receiver pi(2); users pi(3).. interfere.
    let a2 = ch.power_gain(p2);
    let a1 = ch.power_gain(p1);
    let mut i1 = 0.0; // first-subphase interference sum
    let mut i2 = 0.0; // second-subphase interference sum
    for &m in &ch.order[2..] {
        i1 += alloc.info_power_1[m] * ch.power_gain(m);
        i2 += alloc.info_power_2[m] * ch.power_gain(m);
    }
    let s2 = params.user_noise;
    let n1 = params.split_noise(alloc.theta);
    let w = alloc.omega;
    let sinr1 = (1.0 - alloc.theta) * w * a2 * a1 * alloc.info_power_1[p1]
        / (w * a2 * ((1.0 - alloc.theta) * i1 + n1) + s2);
    let sinr2 =
        w * a2 * a1 * alloc.info_power_2[p1] / (w * a2 * (i2 + params.relay_noise) + s2);
    let r_first = alloc.alpha * capacity(sinr1) + (1.0 - alloc.alpha) * capacity(sinr2);

    r_others + r_first
}
