//! Monte-Carlo model of a heralded Hanbury Brown–Twiss measurement and
//! the anti-correlation parameter α.
//!
//! A pair source emits `k` photon pairs per detection window. One photon
//! of each pair goes to a trigger detector; its partner crosses the chip,
//! then a 50:50 splitter, and lands on one of two arm detectors. The
//! heralded second-order correlation at zero delay,
//!
//! ```text
//! α = p_T · p_T12 / (p_T1 · p_T2)
//! ```
//!
//! (probabilities of trigger, trigger+both arms, trigger+arm 1,
//! trigger+arm 2), is 0 for an ideal single-photon source and 1 for
//! uncorrelated (coherent) light. [`simulate_hbt`] plays the experiment
//! window by window; [`alpha_ideal_model`] computes the same quantity by
//! exact enumeration over photon numbers, serving as the Monte-Carlo
//! oracle.

use crate::error::Error;
use crate::math;
use crate::rng::SplitMix64;
use core::ops::Range;

/// Photon-pair number statistics per detection window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStatistics {
    /// Poissonian pair number — the multi-mode down-conversion limit.
    Poisson,
    /// Thermal (Bose–Einstein) pair number — single-mode down-conversion.
    Thermal,
    /// Debug source emitting exactly one pair every window. A lone photon
    /// can never fire both arms, so α must come out 0.
    FixedOne,
}

/// Source, chip, and detector parameters of the HBT setup.
///
/// All detectors are non-number-resolving threshold detectors with no dead
/// time inside a window; windows are statistically independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceModel {
    /// Mean photon-pair number per window (dimensionless, ≥ 0).
    pub pair_mean: f64,
    pub pair_statistics: PairStatistics,
    /// Probability that a given pair's herald photon fires the trigger.
    pub herald_efficiency: f64,
    /// Probability that a signal photon survives chip plus collection.
    pub signal_transmission: f64,
    /// Probability that a surviving signal photon exits toward arm 1.
    pub splitter_ratio: f64,
    /// Per-window dark-count probabilities of the three detectors.
    pub dark_prob_1: f64,
    pub dark_prob_2: f64,
    pub dark_prob_trigger: f64,
    /// Debug mode: the trigger fires from an independent pair draw instead
    /// of the signal's own heralds, destroying the trigger–signal
    /// correlation. For a Poisson source this makes α exactly 1.
    pub uncorrelated_trigger: bool,
}

impl Default for SourceModel {
    /// An ideal heralded source: Poisson pairs at mean 0.1, unit
    /// efficiencies, balanced splitter, no dark counts.
    fn default() -> Self {
        Self {
            pair_mean: 0.1,
            pair_statistics: PairStatistics::Poisson,
            herald_efficiency: 1.0,
            signal_transmission: 1.0,
            splitter_ratio: 0.5,
            dark_prob_1: 0.0,
            dark_prob_2: 0.0,
            dark_prob_trigger: 0.0,
            uncorrelated_trigger: false,
        }
    }
}

impl SourceModel {
    /// Checks every field range: mean ≥ 0 and finite, efficiencies and
    /// dark probabilities in [0,1], splitter ratio in (0,1).
    pub fn validate(&self) -> Result<(), Error> {
        if !self.pair_mean.is_finite() || self.pair_mean < 0.0 {
            return Err(Error::InvalidSourceModel {
                what: "pair_mean must be finite and ≥ 0",
            });
        }
        let unit = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        if !unit(self.herald_efficiency) {
            return Err(Error::InvalidSourceModel {
                what: "herald_efficiency must be in [0, 1]",
            });
        }
        if !unit(self.signal_transmission) {
            return Err(Error::InvalidSourceModel {
                what: "signal_transmission must be in [0, 1]",
            });
        }
        if !(self.splitter_ratio > 0.0 && self.splitter_ratio < 1.0) {
            return Err(Error::InvalidSourceModel {
                what: "splitter_ratio must be in (0, 1)",
            });
        }
        if !unit(self.dark_prob_1) || !unit(self.dark_prob_2) || !unit(self.dark_prob_trigger) {
            return Err(Error::InvalidSourceModel {
                what: "dark probabilities must be in [0, 1]",
            });
        }
        Ok(())
    }
}

/// Event tallies of an HBT run: trigger singles, trigger–arm
/// coincidences, and triple coincidences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HbtCounts {
    pub n_windows: u64,
    pub c_t: u64,
    pub c_t1: u64,
    pub c_t2: u64,
    pub c_t12: u64,
}

impl HbtCounts {
    /// Combines tallies from disjoint window ranges (field-wise addition).
    pub fn merge(self, other: HbtCounts) -> HbtCounts {
        HbtCounts {
            n_windows: self.n_windows + other.n_windows,
            c_t: self.c_t + other.c_t,
            c_t1: self.c_t1 + other.c_t1,
            c_t2: self.c_t2 + other.c_t2,
            c_t12: self.c_t12 + other.c_t12,
        }
    }
}

fn draw_pairs(rng: &mut SplitMix64, model: &SourceModel) -> u64 {
    match model.pair_statistics {
        PairStatistics::Poisson => rng.poisson(model.pair_mean),
        PairStatistics::Thermal => rng.thermal(model.pair_mean),
        PairStatistics::FixedOne => 1,
    }
}

/// `base^k` by repeated multiplication (k is a small photon count).
fn pow_u64(base: f64, k: u64) -> f64 {
    let mut acc = 1.0;
    for _ in 0..k {
        acc *= base;
    }
    acc
}

/// Simulates the windows in `windows` (absolute indices). Every window
/// owns its own counter-addressed random stream keyed by `(seed, window
/// index)`, so splitting a range across calls — or across concurrent
/// shards — and merging the tallies reproduces the single-call result
/// exactly.
pub fn simulate_hbt_windows(
    model: &SourceModel,
    windows: Range<u64>,
    seed: u64,
) -> Result<HbtCounts, Error> {
    model.validate()?;
    let mut counts = HbtCounts::default();
    for w in windows {
        let mut rng = SplitMix64::stream(seed, w);

        // Fixed draw order per window: pair number, (independent trigger
        // pair number in debug mode), trigger firing, trigger dark count,
        // one routing draw per signal photon, arm 1 dark, arm 2 dark.
        let k = draw_pairs(&mut rng, model);
        let k_trigger = if model.uncorrelated_trigger {
            draw_pairs(&mut rng, model)
        } else {
            k
        };

        let p_fire = 1.0 - pow_u64(1.0 - model.herald_efficiency, k_trigger);
        let herald = rng.bernoulli(p_fire);
        let trigger_dark = rng.bernoulli(model.dark_prob_trigger);
        let trigger = herald || trigger_dark;

        let mut arm1 = 0u64;
        let mut arm2 = 0u64;
        let p_arm1 = model.signal_transmission * model.splitter_ratio;
        for _ in 0..k {
            let u = rng.uniform();
            if u < p_arm1 {
                arm1 += 1;
            } else if u < model.signal_transmission {
                arm2 += 1;
            }
        }
        let dark1 = rng.bernoulli(model.dark_prob_1);
        let dark2 = rng.bernoulli(model.dark_prob_2);
        let det1 = arm1 > 0 || dark1;
        let det2 = arm2 > 0 || dark2;

        counts.n_windows += 1;
        if trigger {
            counts.c_t += 1;
            if det1 {
                counts.c_t1 += 1;
            }
            if det2 {
                counts.c_t2 += 1;
            }
            if det1 && det2 {
                counts.c_t12 += 1;
            }
        }
    }
    Ok(counts)
}

/// Simulates `n_windows` detection windows (≥ 1) of the HBT experiment.
/// Deterministic for fixed `(model, n_windows, seed)`.
pub fn simulate_hbt(model: &SourceModel, n_windows: u64, seed: u64) -> Result<HbtCounts, Error> {
    if n_windows < 1 {
        return Err(Error::InvalidSourceModel {
            what: "n_windows must be ≥ 1",
        });
    }
    simulate_hbt_windows(model, 0..n_windows, seed)
}

/// The estimated anti-correlation parameter with its statistical error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaEstimate {
    pub alpha: f64,
    pub std_error: f64,
    /// Set when no triple coincidence was observed: `alpha` is then 0 and
    /// `std_error` is the scale of a single triple count — an upper bound,
    /// not a symmetric error bar.
    pub upper_bound: bool,
}

/// α = (c_t · c_t12) / (c_t1 · c_t2) — the window counts cancel — with a
/// first-order error propagation treating each tally as Poisson:
/// std_error = α·√(1/c_t + 1/c_t12 + 1/c_t1 + 1/c_t2).
///
/// Requires c_t1 > 0 and c_t2 > 0. With c_t12 = 0 the estimate is 0 and
/// the [`AlphaEstimate::upper_bound`] flag is set, with std_error the α
/// that a single triple coincidence would have produced.
pub fn alpha_estimate(counts: &HbtCounts) -> Result<AlphaEstimate, Error> {
    if counts.c_t1 == 0 || counts.c_t2 == 0 {
        return Err(Error::UndefinedEstimate);
    }
    let c_t = counts.c_t as f64;
    let c_t1 = counts.c_t1 as f64;
    let c_t2 = counts.c_t2 as f64;
    if counts.c_t12 == 0 {
        return Ok(AlphaEstimate {
            alpha: 0.0,
            std_error: c_t / (c_t1 * c_t2),
            upper_bound: true,
        });
    }
    let c_t12 = counts.c_t12 as f64;
    let alpha = (c_t * c_t12) / (c_t1 * c_t2);
    let std_error = alpha * math::sqrt(1.0 / c_t + 1.0 / c_t12 + 1.0 / c_t1 + 1.0 / c_t2);
    Ok(AlphaEstimate {
        alpha,
        std_error,
        upper_bound: false,
    })
}

/// Truncated probability mass function of the pair-number distribution:
/// every term until the tail falls below 1e-12 (capped at 512 terms).
fn pair_pmf(stats: PairStatistics, mean: f64) -> alloc::vec::Vec<f64> {
    let mut pmf = alloc::vec::Vec::new();
    match stats {
        PairStatistics::FixedOne => {
            pmf.push(0.0);
            pmf.push(1.0);
        }
        PairStatistics::Poisson => {
            let mut p = math::exp(-mean);
            let mut cum = p;
            pmf.push(p);
            let mut k = 0u64;
            while 1.0 - cum > 1e-12 && k < 512 {
                k += 1;
                p *= mean / k as f64;
                cum += p;
                pmf.push(p);
            }
        }
        PairStatistics::Thermal => {
            let ratio = mean / (1.0 + mean);
            let mut p = 1.0 / (1.0 + mean);
            let mut cum = p;
            pmf.push(p);
            let mut k = 0u64;
            while 1.0 - cum > 1e-12 && k < 512 {
                k += 1;
                p *= ratio;
                cum += p;
                pmf.push(p);
            }
        }
    }
    pmf
}

/// Exact α for an arbitrary source model, by enumeration over the pair
/// number: for k pairs, the trigger misses with (1−η_h)ᵏ (times the dark
/// complement), arm 1 stays dark with (1−η_s·r)ᵏ, arm 2 with
/// (1−η_s·(1−r))ᵏ, and both with (1−η_s)ᵏ. These inclusion–exclusion
/// terms, averaged over the pair statistics, give every probability in
/// the α ratio. This is the analytic oracle for [`simulate_hbt`].
///
/// Returns 0 when the source is so weak that the heralded singles
/// probabilities vanish (the α of an empty data set is conventionally 0
/// here; the estimator itself errors in that situation).
pub fn alpha_ideal_model(model: &SourceModel) -> f64 {
    let pmf = pair_pmf(model.pair_statistics, model.pair_mean);
    let eta_s = model.signal_transmission;
    let r = model.splitter_ratio;
    let miss1 = 1.0 - eta_s * r;
    let miss2 = 1.0 - eta_s * (1.0 - r);
    let miss_both = 1.0 - eta_s;
    let miss_t = 1.0 - model.herald_efficiency;
    let live_d1 = 1.0 - model.dark_prob_1;
    let live_d2 = 1.0 - model.dark_prob_2;
    let live_dt = 1.0 - model.dark_prob_trigger;

    // Σ_k P(k)·xᵏ for the arm miss factors.
    let mut q1 = 0.0; // P(arm1 silent)
    let mut q2 = 0.0; // P(arm2 silent)
    let mut q12 = 0.0; // P(both arms silent)
    for (k, &p) in pmf.iter().enumerate() {
        let k = k as u64;
        q1 += p * pow_u64(miss1, k);
        q2 += p * pow_u64(miss2, k);
        q12 += p * pow_u64(miss_both, k);
    }
    q1 *= live_d1;
    q2 *= live_d2;
    q12 *= live_d1 * live_d2;

    let p1 = 1.0 - q1;
    let p2 = 1.0 - q2;
    let p12 = 1.0 - q1 - q2 + q12;

    if model.uncorrelated_trigger {
        // Independent trigger: p_T factors out of every coincidence, so
        // α reduces to the unheralded ratio p12 / (p1·p2).
        if p1 * p2 == 0.0 {
            return 0.0;
        }
        return p12 / (p1 * p2);
    }

    // Correlated trigger: average the joint outcome over k. Within a
    // window the trigger miss and the arm misses are independent given k.
    let mut p_t = 0.0;
    let mut p_t1 = 0.0;
    let mut p_t2 = 0.0;
    let mut p_t12 = 0.0;
    for (k, &p) in pmf.iter().enumerate() {
        let k = k as u64;
        let fire = 1.0 - live_dt * pow_u64(miss_t, k);
        let s1 = 1.0 - live_d1 * pow_u64(miss1, k);
        let s2 = 1.0 - live_d2 * pow_u64(miss2, k);
        let s12 = 1.0 - live_d1 * pow_u64(miss1, k) - live_d2 * pow_u64(miss2, k)
            + live_d1 * live_d2 * pow_u64(miss_both, k);
        p_t += p * fire;
        p_t1 += p * fire * s1;
        p_t2 += p * fire * s2;
        p_t12 += p * fire * s12;
    }
    if p_t1 * p_t2 == 0.0 {
        return 0.0;
    }
    p_t * p_t12 / (p_t1 * p_t2)
}

/// Exact α for a dark-count-free, balanced-splitter heralded source — the
/// signature most tests and calibrations need. See [`alpha_ideal_model`].
pub fn alpha_ideal(
    pair_statistics: PairStatistics,
    pair_mean: f64,
    herald_efficiency: f64,
    transmission: f64,
) -> f64 {
    alpha_ideal_model(&SourceModel {
        pair_mean,
        pair_statistics,
        herald_efficiency,
        signal_transmission: transmission,
        splitter_ratio: 0.5,
        dark_prob_1: 0.0,
        dark_prob_2: 0.0,
        dark_prob_trigger: 0.0,
        uncorrelated_trigger: false,
    })
}
