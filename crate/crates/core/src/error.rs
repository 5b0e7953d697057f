//! Error type shared across the crate.

use alloc::boxed::Box;
use core::fmt;

/// Everything that can go wrong in this crate.
///
/// Variants fall into three families: invalid inputs (parameters, grids,
/// indices), numerical failure (the iterative eigensolver giving up), and
/// undefined results (ratios whose denominators vanished). Callers that
/// drive batch jobs typically map the families to distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Lattices need at least two sites to have a coupling.
    TooFewSites { n_sites: usize },
    /// The coupling scale `t` must be strictly positive.
    NonPositiveCoupling { t: f64 },
    /// |λ| > 1 makes some couplings negative; rejected unless the caller
    /// opts into unphysical parameters explicitly.
    ModulationOutOfRange { lambda: f64 },
    /// The incommensuration `b` must be strictly positive.
    NonPositiveIncommensuration { b: f64 },
    /// A parameter that must be a finite number was NaN or infinite.
    NonFinite { what: &'static str },
    /// A site index fell outside `1..=n_sites` (or `1..=n_sites-1` for
    /// couplings, which live on bonds).
    SiteOutOfRange { site: usize, limit: usize },
    /// An edge/return window half-width was zero or larger than the chain.
    WindowOutOfRange { d: usize, n_sites: usize },
    /// A scan or sample grid was empty.
    EmptyGrid,
    /// A scan or sample grid was not strictly increasing.
    GridNotIncreasing,
    /// The first propagation distance must be ≥ 0.
    NegativeDistance { z: f64 },
    /// Gaussian broadening must be strictly positive.
    NonPositiveSigma { sigma: f64 },
    /// The QL iteration failed to converge for the eigenvalue at `index`.
    /// No partial spectrum is returned.
    NoConvergence { index: usize },
    /// A failure inside a scan, tagged with the offending phase value.
    AtPhi { phi: f64, source: Box<Error> },
    /// Two objects that must share a dimension did not.
    DimensionMismatch { expected: usize, got: usize },
    /// An amplitude vector was not normalized to 1 within 1e-12.
    NotNormalized { norm_sqr: f64 },
    /// A return probability was requested for an all-zero distribution.
    ZeroDistribution,
    /// A photon-source parameter was out of range.
    InvalidSourceModel { what: &'static str },
    /// α is undefined because a heralded singles count was zero.
    UndefinedEstimate,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewSites { n_sites } => {
                write!(f, "lattice needs at least 2 sites, got {n_sites}")
            }
            Error::NonPositiveCoupling { t } => {
                write!(f, "coupling scale t must be > 0, got {t}")
            }
            Error::ModulationOutOfRange { lambda } => write!(
                f,
                "modulation depth λ = {lambda} lies outside [-1, 1]; use \
                 LatticeParams::unphysical to allow it"
            ),
            Error::NonPositiveIncommensuration { b } => {
                write!(f, "incommensuration b must be > 0, got {b}")
            }
            Error::NonFinite { what } => write!(f, "{what} must be finite"),
            Error::SiteOutOfRange { site, limit } => {
                write!(f, "site index {site} outside 1..={limit}")
            }
            Error::WindowOutOfRange { d, n_sites } => {
                write!(f, "window half-width {d} invalid for {n_sites} sites")
            }
            Error::EmptyGrid => write!(f, "grid must contain at least one point"),
            Error::GridNotIncreasing => write!(f, "grid must be strictly increasing"),
            Error::NegativeDistance { z } => {
                write!(f, "propagation distances must start at z ≥ 0, got {z}")
            }
            Error::NonPositiveSigma { sigma } => {
                write!(f, "broadening σ must be > 0, got {sigma}")
            }
            Error::NoConvergence { index } => write!(
                f,
                "eigensolver failed to converge for eigenvalue index {index}"
            ),
            Error::AtPhi { phi, source } => write!(f, "at φ = {phi}: {source}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotNormalized { norm_sqr } => write!(
                f,
                "amplitudes must satisfy Σ|a|² = 1 within 1e-12, got {norm_sqr}"
            ),
            Error::ZeroDistribution => {
                write!(f, "return probability undefined for an all-zero distribution")
            }
            Error::InvalidSourceModel { what } => write!(f, "invalid source model: {what}"),
            Error::UndefinedEstimate => write!(
                f,
                "α undefined: a heralded singles count is zero; collect more windows"
            ),
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::AtPhi { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}
