//! Gamma-function helpers.
//!
//! Thin layer over the `libm` port of musl's `tgamma`/`lgamma_r`, adding the
//! reciprocal gamma function, which is entire and therefore well defined at
//! the poles of Γ (where it vanishes).

use std::f64::consts::PI;

/// Γ(x). Returns ±∞ or NaN at the poles.
#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln |Γ(x)|.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// sin(πx), exact at integers and half-integers.
pub fn sin_pi(x: f64) -> f64 {
    // reduce to [-1, 1) using the period 2
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == -0.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// cos(πx), exact at integers and half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// 1/Γ(x). Zero at x = 0, -1, -2, ...
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    if x < -170.0 {
        // reflection: 1/Γ(x) = Γ(1 - x) sin(πx) / π
        let s = sin_pi(x);
        return s.signum() * (ln_gamma(1.0 - x) + (s.abs() / PI).ln()).exp();
    }
    1.0 / gamma(x)
}
