//! Float math wrappers.
//!
//! All transcendentals funnel through `libm` so results are bit-identical
//! with and without the `std` feature (std also lacks `erf` entirely).

pub(crate) use libm::{cos, erf, exp, expm1, sin, sqrt};

pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub(crate) const SQRT_PI: f64 = 1.772_453_850_905_516;
