//! Deterministic, counter-addressable random streams for the Monte-Carlo
//! photon model.
//!
//! The generator is SplitMix64: a 64-bit counter advanced by a fixed odd
//! increment (the golden gamma), finalized by an avalanching bit mixer.
//! Because the state is just a counter, a stream can be opened at any
//! `(seed, stream index)` pair in O(1); the photon simulation gives every
//! detection window its own stream, which makes results independent of how
//! windows are sharded across calls.
//!
//! This is simulation-grade randomness — fast, reproducible, and
//! statistically solid — not a cryptographic generator.

/// Weyl increment: 2⁶⁴ divided by the golden ratio, forced odd.
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
/// Distinguishes the stream-index preimage from the seed preimage.
const STREAM_SALT: u64 = 0xD1B5_4A32_D192_ED03;

/// Stafford's "variant 13" finalizer as used by SplitMix64.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A single SplitMix64 stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Stream 0 of the given seed.
    pub fn new(seed: u64) -> Self {
        Self::stream(seed, 0)
    }

    /// The `index`-th stream of the given seed. Distinct indices yield
    /// statistically independent sequences; the construction is pure
    /// arithmetic, so stream k of seed s is the same on every machine.
    pub fn stream(seed: u64, index: u64) -> Self {
        let origin = mix64(seed) ^ mix64(index.wrapping_mul(GAMMA) ^ STREAM_SALT);
        Self { state: origin }
    }

    /// Next raw 64-bit word.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform double in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Bernoulli trial: `true` with probability `p` (clamped semantics:
    /// p ≤ 0 never fires, p ≥ 1 always fires).
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Poisson-distributed count with the given mean, drawn by sequential
    /// inversion of the CDF (one uniform per draw). Suitable for the small
    /// means used here; the loop is capped to stay total even if rounding
    /// leaves the CDF marginally short of the drawn uniform.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        debug_assert!(mean >= 0.0 && mean.is_finite());
        let u = self.uniform();
        let mut k = 0u64;
        let mut pmf = crate::math::exp(-mean);
        let mut cdf = pmf;
        while u >= cdf && k < 4096 {
            k += 1;
            pmf *= mean / k as f64;
            cdf += pmf;
        }
        k
    }

    /// Thermal (Bose–Einstein / geometric) photon-number count with the
    /// given mean: P(k) = μᵏ / (1+μ)ᵏ⁺¹, drawn by sequential inversion.
    pub fn thermal(&mut self, mean: f64) -> u64 {
        debug_assert!(mean >= 0.0 && mean.is_finite());
        let u = self.uniform();
        let ratio = mean / (1.0 + mean);
        let mut k = 0u64;
        let mut pmf = 1.0 / (1.0 + mean);
        let mut cdf = pmf;
        while u >= cdf && k < 4096 {
            k += 1;
            pmf *= ratio;
            cdf += pmf;
        }
        k
    }
}
