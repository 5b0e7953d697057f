//! Lattice parameters, coupling profiles, and the single-excitation
//! Hamiltonian.
//!
//! Sites are numbered 1..=N throughout the public API, matching the way
//! waveguide arrays are labelled in the lab; storage is 0-based internally.
//! Bond `n` couples sites `n` and `n+1` and carries the strength
//!
//! ```text
//! J(n) = t · (1 + λ cos(2π b n + φ))
//! ```
//!
//! With |λ| ≤ 1 every coupling is non-negative and the model is realizable
//! as an array of evanescently coupled waveguides. Irrational `b` makes the
//! sequence quasi-periodic: it never repeats, yet shifting the phase by
//! 2πb reproduces the same sequence one bond over.

use crate::error::Error;
use crate::math;
use alloc::vec::Vec;
use core::f64::consts::TAU;

/// The golden mean (1+√5)/2, the canonical incommensuration for
/// quasi-periodic coupling sequences. Stored as a constant so every module
/// sees the identical double rather than re-deriving it.
pub const GOLDEN_MEAN: f64 = 1.618033988749895;

/// [`GOLDEN_MEAN`] as a function, for call sites that want one.
pub fn golden_mean() -> f64 {
    GOLDEN_MEAN
}

/// Validated parameter set for the modulated chain.
///
/// Construct via [`LatticeParams::new`] (which enforces physical ranges) or
/// [`LatticeParams::unphysical`] (which waives the |λ| ≤ 1 bound for
/// exploratory use and flags the instance accordingly). The phase is stored
/// reduced to `[0, 2π)`; couplings are 2π-periodic in φ so no information
/// is lost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    n_sites: usize,
    t: f64,
    lambda: f64,
    b: f64,
    phi: f64,
    physical: bool,
}

impl LatticeParams {
    /// Validates and stores a parameter set: `n_sites ≥ 2`, `t > 0`,
    /// `|lambda| ≤ 1`, `b > 0`, all finite. `phi` is reduced mod 2π.
    pub fn new(n_sites: usize, t: f64, lambda: f64, b: f64, phi: f64) -> Result<Self, Error> {
        if lambda.abs() > 1.0 {
            return Err(Error::ModulationOutOfRange { lambda });
        }
        Self::unphysical(n_sites, t, lambda, b, phi)
    }

    /// Like [`new`](Self::new) but admits any finite modulation depth.
    /// Instances with |λ| > 1 report [`is_physical`](Self::is_physical) =
    /// `false`: some couplings are negative, which no waveguide spacing can
    /// realize, though the mathematics still goes through.
    pub fn unphysical(n_sites: usize, t: f64, lambda: f64, b: f64, phi: f64) -> Result<Self, Error> {
        if n_sites < 2 {
            return Err(Error::TooFewSites { n_sites });
        }
        if !t.is_finite() {
            return Err(Error::NonFinite { what: "t" });
        }
        if t <= 0.0 {
            return Err(Error::NonPositiveCoupling { t });
        }
        if !lambda.is_finite() {
            return Err(Error::NonFinite { what: "lambda" });
        }
        if !b.is_finite() {
            return Err(Error::NonFinite { what: "b" });
        }
        if b <= 0.0 {
            return Err(Error::NonPositiveIncommensuration { b });
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite { what: "phi" });
        }
        Ok(Self {
            n_sites,
            t,
            lambda,
            b,
            phi: math::rem_euclid(phi, TAU),
            physical: lambda.abs() <= 1.0,
        })
    }

    /// Number of sites N.
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Coupling scale t.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Modulation depth λ.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Incommensuration b.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Modulation phase φ, reduced to `[0, 2π)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `false` when the instance was constructed with |λ| > 1.
    pub fn is_physical(&self) -> bool {
        self.physical
    }

    /// The same lattice at a different modulation phase (reduced mod 2π).
    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = math::rem_euclid(phi, TAU);
        self
    }
}

/// Coupling strength on bond `n` (1-based; bond `n` joins sites `n` and
/// `n+1`, so `1 ≤ n ≤ N-1`).
pub fn coupling_strength(params: &LatticeParams, n: usize) -> Result<f64, Error> {
    if n < 1 || n > params.n_sites - 1 {
        return Err(Error::SiteOutOfRange {
            site: n,
            limit: params.n_sites - 1,
        });
    }
    Ok(params.t * (1.0 + params.lambda * math::cos(TAU * params.b * n as f64 + params.phi)))
}

/// The N-1 bond strengths of a chain, in site order.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingProfile {
    couplings: Vec<f64>,
}

impl CouplingProfile {
    /// Number of bonds (N-1).
    pub fn len(&self) -> usize {
        self.couplings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.couplings.is_empty()
    }

    /// All bond strengths, bond 1 first.
    pub fn as_slice(&self) -> &[f64] {
        &self.couplings
    }

    /// Strength of bond `n` (1-based), or `None` out of range.
    pub fn get(&self, n: usize) -> Option<f64> {
        if n >= 1 {
            self.couplings.get(n - 1).copied()
        } else {
            None
        }
    }
}

/// Evaluates every bond strength of the chain described by `params`.
pub fn build_couplings(params: &LatticeParams) -> CouplingProfile {
    let couplings = (1..params.n_sites)
        .map(|n| {
            params.t * (1.0 + params.lambda * math::cos(TAU * params.b * n as f64 + params.phi))
        })
        .collect();
    CouplingProfile { couplings }
}

/// The single-excitation Hamiltonian: a real symmetric tridiagonal matrix
/// with zero diagonal whose off-diagonal is the coupling profile. Open
/// boundary conditions — nothing wraps around.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    off_diag: Vec<f64>,
}

impl Hamiltonian {
    /// Wraps an explicit off-diagonal (length N-1, so N = len + 1 sites).
    /// Useful for feeding hand-built coupling sequences to the solvers.
    pub fn from_off_diagonal(off_diag: Vec<f64>) -> Result<Self, Error> {
        if off_diag.is_empty() {
            return Err(Error::TooFewSites { n_sites: 1 });
        }
        if off_diag.iter().any(|j| !j.is_finite()) {
            return Err(Error::NonFinite { what: "coupling" });
        }
        Ok(Self { off_diag })
    }

    /// Matrix dimension N (number of sites).
    pub fn dimension(&self) -> usize {
        self.off_diag.len() + 1
    }

    /// The N-1 off-diagonal entries; entry `i` couples sites `i+1`, `i+2`.
    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diag
    }

    /// Matrix-vector product H·x for a real vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, Error> {
        let n = self.dimension();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut out = alloc::vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            if i > 0 {
                acc += self.off_diag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.off_diag[i] * x[i + 1];
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

/// Builds the Hamiltonian of the chain described by `params`.
pub fn build_hamiltonian(params: &LatticeParams) -> Hamiltonian {
    Hamiltonian {
        off_diag: build_couplings(params).couplings,
    }
}
