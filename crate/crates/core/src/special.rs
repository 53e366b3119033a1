//! The two-parameter Mittag-Leffler function on the real line,
//!
//! ```text
//! E_{α,β}(z) = Σ_{n≥0} zⁿ / Γ(αn + β),
//! ```
//!
//! evaluated in 64-bit floating point by one of three branches:
//!
//! * **Series.** The defining series, truncated once past its peak and once
//!   the last term is below `1e-16` of the partial sum. Accepted only when
//!   it converged within [`SERIES_MAX_TERMS`] terms *and* the sum of the
//!   absolute values of the terms is within a factor 100 of the result.
//!   That factor bounds the cancellation, which is what ruins the series for
//!   negative arguments of even moderate size.
//! * **Asymptotic.** For `0 < α < 1` and `z ≤ -10`,
//!   `E_{α,β}(z) ≈ -Σ_{k=1..10} z^{-k} / Γ(β - αk)`, where terms at poles of Γ
//!   vanish. Accepted when the first omitted terms are below `1e-15` of the
//!   sum.
//! * **Integral.** For `0 < α ≤ 1`, the Laplace-type representation
//!   (Gorenflo, Loutchko & Luchko)
//!   `E_{α,β}(z) = ∫_0^∞ K(χ) dχ [+ α⁻¹ z^{(1-β)/α} exp(z^{1/α}) for z > 0]`
//!   with `K(χ) = χ^{(1-β)/α} e^{-χ^{1/α}} (χ sin πβ - z sin π(β-α))
//!   / (απ (χ² - 2χz cos πα + z²))`, integrated by double-exponential
//!   quadrature. β is first lowered below `1 + α/2` through
//!   `E_{α,β+α}(z) = (E_{α,β}(z) - 1/Γ(β)) / z`. At α = 1 and z < 0 the
//!   kernel has a pole on the path, so the Euler integral
//!   `E_{1,β}(z) = Γ(β)⁻¹ ∫_0^1 exp(z(1 - v^{1/(β-1)})) dv` (β > 1) is used
//!   instead.
//!
//! [`ml_eval`] tries them in that order. Every branch is also reachable
//! directly through [`ml_eval_with`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::{cos_pi, ln_gamma, rgamma, sin_pi};
use crate::quad::{self, Node, Rule};

/// Most negative supported argument.
pub const Z_MIN: f64 = -100.0;
/// Most positive supported argument.
pub const Z_MAX: f64 = 30.0;
/// Series truncation limit.
pub const SERIES_MAX_TERMS: usize = 500;
/// Number of terms of the large-argument expansion.
pub const ASYMPTOTIC_TERMS: usize = 10;
/// The asymptotic branch is only tried for `z ≤ -ASYMPTOTIC_SWITCH`.
pub const ASYMPTOTIC_SWITCH: f64 = 10.0;

const SERIES_MAX_CANCELLATION: f64 = 1e2;
const ASYMPTOTIC_TAIL_TOL: f64 = 1e-15;
const QUAD_TOL: f64 = 1e-13;

/// Parameters (α, β) of E_{α,β}.
///
/// `0 < α ≤ 2` and `β > 0`. Model code only ever uses `α ≤ 1`; the larger
/// range exists for testing the function itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    alpha: f64,
    beta: f64,
}

impl MlParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::domain("alpha", alpha, "must lie in (0, 2]"));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain("beta", beta, "must be positive"));
        }
        Ok(MlParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// True when `E_{α,β}(-x)` is completely monotone on `x ≥ 0`.
    pub fn is_completely_monotone(&self) -> bool {
        self.alpha <= 1.0 && self.beta >= self.alpha
    }
}

/// Evaluation branch, see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Asymptotic,
    Integral,
}

/// E_{α,β}(z).
pub fn ml_eval(p: MlParams, z: f64) -> Result<f64> {
    check_argument(p, z)?;
    let (alpha, beta) = (p.alpha, p.beta);
    if z == 0.0 {
        return Ok(rgamma(beta));
    }
    if alpha == 1.0 && beta == 1.0 {
        return Ok(z.exp());
    }

    let s = series(alpha, beta, z);
    if s.accepted() {
        return finite(p, z, s.value);
    }
    if alpha < 1.0 && z <= -ASYMPTOTIC_SWITCH {
        let a = asymptotic(alpha, beta, z);
        if a.accepted() {
            return finite(p, z, a.value);
        }
    }
    if alpha <= 1.0 {
        let v = integral(alpha, beta, z, None)?.0;
        return finite(p, z, v);
    }
    // α > 1 has no fallback; take the series if its rounding error is small
    let rounding = s.abs_sum * f64::EPSILON * 8.0;
    if s.converged && rounding <= 1e-10 * s.value.abs().max(1.0) {
        return finite(p, z, s.value);
    }
    Err(Error::Accuracy { alpha, beta, z })
}

/// E_α(z) = E_{α,1}(z).
pub fn ml_one(alpha: f64, z: f64) -> Result<f64> {
    ml_eval(MlParams::new(alpha, 1.0)?, z)
}

/// E_{α,β}(z) through one specific branch, without the acceptance checks
/// [`ml_eval`] applies. Fails only when the branch is not applicable
/// (the series did not converge, the asymptotic expansion is used outside
/// `α < 1, z < 0`, or the integral is requested for `α > 1`).
pub fn ml_eval_with(p: MlParams, z: f64, method: Method) -> Result<f64> {
    check_argument(p, z)?;
    let (alpha, beta) = (p.alpha, p.beta);
    let not_applicable = Error::Accuracy { alpha, beta, z };
    let v = match method {
        Method::Series => {
            let s = series(alpha, beta, z);
            if !s.converged {
                return Err(not_applicable);
            }
            s.value
        }
        Method::Asymptotic => {
            if alpha >= 1.0 || z >= 0.0 {
                return Err(not_applicable);
            }
            asymptotic(alpha, beta, z).value
        }
        Method::Integral => {
            if z == 0.0 {
                rgamma(beta)
            } else {
                integral(alpha, beta, z, None)?.0
            }
        }
    };
    finite(p, z, v)
}

/// `n`-th central finite difference quotient of `t ↦ E_{α,β}(-t)` at `x`
/// with step `h`, for `n ≤ 3`.
///
/// All stencil points are evaluated with the branch (and quadrature level)
/// chosen at `x`, so the differences do not straddle a branch switch. Used
/// to check the sign pattern `(-1)ⁿ dⁿ/dtⁿ E_{α,β}(-t) ≥ 0`.
pub fn ml_deriv_sign_probe(p: MlParams, x: f64, n: u32, h: f64) -> Result<f64> {
    if n > 3 {
        return Err(Error::domain(
            "n",
            n as f64,
            "derivative order must be at most 3",
        ));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::domain("h", h, "step must be positive"));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain("x", x, "must be nonnegative"));
    }
    // (offset in steps, weight), divisor
    let (stencil, divisor): (&[(f64, f64)], f64) = match n {
        0 => (&[(0.0, 1.0)], 1.0),
        1 => (&[(1.0, 1.0), (-1.0, -1.0)], 2.0 * h),
        2 => (&[(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)], h * h),
        _ => (
            &[(2.0, 1.0), (1.0, -2.0), (-1.0, 2.0), (-2.0, -1.0)],
            2.0 * h * h * h,
        ),
    };
    let reach = stencil.iter().map(|s| s.0.abs()).fold(0.0, f64::max) * h;
    for z in [-(x + reach), -(x - reach)] {
        check_argument(p, z)?;
    }
    let eval = probe_evaluator(p, x, reach)?;
    let mut acc = 0.0;
    for &(k, w) in stencil {
        acc += w * eval(-(x + k * h))?;
    }
    Ok(acc / divisor)
}

type Evaluator = Box<dyn Fn(f64) -> Result<f64>>;

fn probe_evaluator(p: MlParams, x: f64, reach: f64) -> Result<Evaluator> {
    let (alpha, beta) = (p.alpha, p.beta);
    if alpha == 1.0 && beta == 1.0 {
        return Ok(Box::new(|z: f64| Ok(z.exp())));
    }
    let s = series(alpha, beta, -(x + reach));
    if s.converged && s.abs_sum <= 4.0 * s.value.abs() {
        return Ok(Box::new(move |z| Ok(series(alpha, beta, z).value)));
    }
    if alpha < 1.0
        && x - reach >= ASYMPTOTIC_SWITCH
        && asymptotic(alpha, beta, -(x - reach)).accepted()
    {
        return Ok(Box::new(move |z| Ok(asymptotic(alpha, beta, z).value)));
    }
    if alpha > 1.0 {
        return Ok(Box::new(move |z| ml_eval(p, z)));
    }
    let (_, level) = integral(alpha, beta, -x, None)?;
    Ok(Box::new(move |z| {
        if z == 0.0 {
            Ok(rgamma(beta))
        } else {
            integral(alpha, beta, z, Some(level)).map(|r| r.0)
        }
    }))
}

fn check_argument(p: MlParams, z: f64) -> Result<()> {
    if !(Z_MIN..=Z_MAX).contains(&z) {
        return Err(Error::OutOfRange {
            alpha: p.alpha,
            beta: p.beta,
            z,
            min: Z_MIN,
            max: Z_MAX,
        });
    }
    Ok(())
}

fn finite(p: MlParams, z: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else if v.is_infinite() {
        Err(Error::Overflow {
            alpha: p.alpha,
            beta: p.beta,
            z,
        })
    } else {
        Err(Error::Accuracy {
            alpha: p.alpha,
            beta: p.beta,
            z,
        })
    }
}

struct SeriesSum {
    value: f64,
    abs_sum: f64,
    converged: bool,
}

impl SeriesSum {
    fn accepted(&self) -> bool {
        self.converged && self.abs_sum <= SERIES_MAX_CANCELLATION * self.value.abs()
    }
}

fn series(alpha: f64, beta: f64, z: f64) -> SeriesSum {
    let mut sum = rgamma(beta);
    let mut abs_sum = sum.abs();
    if z == 0.0 {
        return SeriesSum {
            value: sum,
            abs_sum,
            converged: true,
        };
    }
    let log_abs_z = z.abs().ln();
    let mut power = 1.0;
    let mut prev = abs_sum;
    for n in 1..=SERIES_MAX_TERMS {
        let arg = alpha * n as f64 + beta;
        power *= z;
        let term = if arg <= 170.0 && power.is_finite() && power != 0.0 {
            power * rgamma(arg)
        } else {
            let sign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            sign * (n as f64 * log_abs_z - ln_gamma(arg)).exp()
        };
        sum += term;
        abs_sum += term.abs();
        let mag = term.abs();
        // Γ is log-convex beyond 2, so once terms shrink they keep shrinking
        if arg > 2.0 && mag < prev && mag <= 1e-16 * sum.abs() {
            return SeriesSum {
                value: sum,
                abs_sum,
                converged: sum.is_finite(),
            };
        }
        prev = mag;
    }
    SeriesSum {
        value: sum,
        abs_sum,
        converged: false,
    }
}

struct AsymptoticSum {
    value: f64,
    tail: f64,
}

impl AsymptoticSum {
    fn accepted(&self) -> bool {
        self.value != 0.0 && self.tail <= ASYMPTOTIC_TAIL_TOL * self.value.abs()
    }
}

fn asymptotic(alpha: f64, beta: f64, z: f64) -> AsymptoticSum {
    let w = 1.0 / z;
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 1..=ASYMPTOTIC_TERMS {
        power *= w;
        sum -= power * rgamma(beta - alpha * k as f64);
    }
    let k = ASYMPTOTIC_TERMS as f64;
    let next = (power * w * rgamma(beta - alpha * (k + 1.0))).abs();
    let after = (power * w * w * rgamma(beta - alpha * (k + 2.0))).abs();
    AsymptoticSum {
        value: sum,
        tail: next.max(after),
    }
}

/// Integral representation; returns the value and the finest quadrature
/// level used. With `level = Some(l)` every segment is evaluated at `l`.
fn integral(alpha: f64, beta: f64, z: f64, level: Option<u32>) -> Result<(f64, u32)> {
    debug_assert!(z != 0.0);
    let fail = Error::Accuracy { alpha, beta, z };
    if alpha > 1.0 {
        return Err(fail);
    }
    if alpha == 1.0 && z < 0.0 {
        return euler_integral(beta, z, level).ok_or(fail);
    }
    // lower β so the χ^{(1-β)/α} endpoint singularity stays mild
    let mut steps = 0usize;
    let mut b0 = beta;
    if beta > 1.0 + 0.5 * alpha {
        steps = ((beta - 1.0 - 0.5 * alpha) / alpha).ceil() as usize;
        b0 = beta - steps as f64 * alpha;
    }
    let (mut v, used) = laplace_integral(alpha, b0, z, level).ok_or(fail)?;
    for i in 0..steps {
        let b = b0 + i as f64 * alpha;
        v = (v - rgamma(b)) / z;
    }
    Ok((v, used))
}

fn laplace_integral(alpha: f64, beta: f64, z: f64, level: Option<u32>) -> Option<(f64, u32)> {
    let gamma_exp = (1.0 - beta) / alpha;
    let inv_alpha = 1.0 / alpha;
    let s1 = sin_pi(beta);
    let s2 = sin_pi(beta - alpha);
    let c = cos_pi(alpha);
    let s = sin_pi(alpha);
    let pre = 1.0 / (alpha * PI);
    let zs = z * s;
    let kernel = move |n: Node| {
        let chi = n.x;
        let d = chi - z * c;
        let denom = d * d + zs * zs;
        pre * (gamma_exp * chi.ln() - chi.powf(inv_alpha)).exp() * (chi * s1 - z * s2) / denom
    };

    // breakpoints: the closest approach of the denominator's zero to the
    // path, and the decay scale of exp(-χ^{1/α})
    let mut breaks = vec![0.0, 1.0];
    let near_pole = z * c;
    if near_pole > 0.0 && (near_pole - 1.0).abs() > 1e-3 {
        breaks.push(near_pole);
    }
    breaks.sort_by(|a, b| a.total_cmp(b));

    let mut total = 0.0;
    let mut max_level = quad::MIN_LEVEL;
    let last = *breaks.last().unwrap();
    let segments = breaks
        .windows(2)
        .map(|w| (Rule::TanhSinh, w[0], w[1]))
        .chain(std::iter::once((Rule::ExpSinh, last, f64::INFINITY)));
    for (rule, a, b) in segments {
        match level {
            Some(l) => total += quad::fixed(kernel, rule, a, b, l),
            None => {
                let e = quad::adaptive(kernel, rule, a, b, QUAD_TOL);
                if !e.converged {
                    return None;
                }
                total += e.value;
                max_level = max_level.max(e.level);
            }
        }
    }
    if z > 0.0 {
        total += inv_alpha * (gamma_exp * z.ln() + z.powf(inv_alpha)).exp();
    }
    Some((total, level.unwrap_or(max_level)))
}

/// α = 1, z < 0.
fn euler_integral(beta: f64, z: f64, level: Option<u32>) -> Option<(f64, u32)> {
    if beta == 1.0 {
        return Some((z.exp(), level.unwrap_or(quad::MIN_LEVEL)));
    }
    if beta < 1.0 {
        let (v, l) = euler_integral(beta + 1.0, z, level)?;
        return Some((rgamma(beta) + z * v, l));
    }
    let p = 1.0 / (beta - 1.0);
    let f = move |n: Node| {
        let ln_v = if n.from_a < 0.5 {
            n.from_a.ln()
        } else {
            (-n.from_b).ln_1p()
        };
        // 1 - v^p without cancellation near v = 1
        let one_minus = -(p * ln_v).exp_m1();
        (z * one_minus).exp()
    };
    let v = match level {
        Some(l) => (quad::fixed(f, Rule::TanhSinh, 0.0, 1.0, l), l),
        None => {
            let e = quad::adaptive(f, Rule::TanhSinh, 0.0, 1.0, QUAD_TOL);
            if !e.converged {
                return None;
            }
            (e.value, e.level)
        }
    };
    Some((rgamma(beta) * v.0, v.1))
}
