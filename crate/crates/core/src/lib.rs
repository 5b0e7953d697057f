//! Core numerics for a photonic waveguide array with quasi-periodically
//! modulated couplings (an off-diagonal Harper chain).
//!
//! The crate models a single excitation hopping on `N` sites with
//! nearest-neighbour couplings
//!
//! ```text
//! J(n) = t · (1 + λ cos(2π b n + φ)),   n = 1 .. N-1
//! ```
//!
//! and zero on-site terms, under open boundary conditions. For irrational
//! `b` (the golden mean by default) the coupling sequence never repeats and
//! the spectrum splits into bands separated by gaps which can host modes
//! exponentially localized at the chain edges. The modules cover:
//!
//! * [`lattice`] — parameter validation, coupling profiles, Hamiltonians;
//! * [`spectral`] — eigendecomposition, band scans over the phase φ, local
//!   density of states, and boundary-mode classification;
//! * [`evolution`] — unitary single-excitation propagation and the
//!   generalized return probability used to quantify edge trapping;
//! * [`photon`] — a Monte-Carlo model of a heralded single-photon
//!   Hanbury Brown–Twiss experiment and its anti-correlation parameter α;
//! * [`rng`] — the deterministic, counter-addressable random stream the
//!   Monte-Carlo model draws from.
//!
//! The crate is `no_std` (with `alloc`); all transcendental functions go
//! through `libm` so results are bit-identical whether or not `std` is
//! linked. Enable the `std` feature to get `std::error::Error` on
//! [`Error`].

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod evolution;
pub mod lattice;
mod math;
pub mod photon;
pub mod rng;
pub mod spectral;

pub use error::Error;
pub use evolution::{
    evolve, output_distribution, propagate_experiment, return_probability, single_site_input,
    AmplitudeState, PropagationResult, Z_EXP,
};
pub use lattice::{
    build_couplings, build_hamiltonian, coupling_strength, golden_mean, CouplingProfile,
    Hamiltonian, LatticeParams, GOLDEN_MEAN,
};
pub use photon::{
    alpha_estimate, alpha_ideal, alpha_ideal_model, simulate_hbt, simulate_hbt_windows,
    AlphaEstimate, HbtCounts, PairStatistics, SourceModel,
};
pub use rng::SplitMix64;
pub use spectral::{
    band_scan, classify_boundary_modes, classify_from_weights, default_broadening,
    default_min_gap, detect_gaps, diagonalize, edge_weight, ldos, BandScan, BoundaryMode,
    EigenSystem, LdosMap, Side, EDGE_WEIGHT_THRESHOLD, EDGE_WINDOW, GAP_SPACING_FACTOR,
};
