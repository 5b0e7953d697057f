//! Thin wrappers over `libm` for the transcendental functions the crate
//! needs. Routing everything through one implementation keeps results
//! bit-identical across targets and across `std`/`no_std` builds.

pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// Euclidean remainder: the value `r` in `[0, m)` with `x = k·m + r`.
/// (`f64::rem_euclid` lives in `std`, not `core`.)
pub(crate) fn rem_euclid(x: f64, m: f64) -> f64 {
    let r = libm::fmod(x, m);
    if r < 0.0 {
        let shifted = r + m;
        // Adding m to a tiny negative remainder can round up to m itself.
        if shifted >= m {
            0.0
        } else {
            shifted
        }
    } else {
        r
    }
}
