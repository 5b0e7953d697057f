//! Deterministic text encoding of numbers for CSV artifacts.

/// Shortest representation of `x` that parses back to the same `f64`,
/// switching to exponent notation outside `[1e-4, 1e16)` so near-zero
/// Gaussian tails don't expand into hundreds of zero digits.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // Also catches -0.0; "-0" in a CSV helps nobody.
        return "0".to_string();
    }
    let a = x.abs();
    if (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
