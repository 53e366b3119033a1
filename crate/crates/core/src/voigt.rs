//! The linear fractional Voigt model
//!
//! ```text
//! η^α D^α ε(t) + E^α ε(t) = σ(t),   ε(0) = 0,   0 < α ≤ 1,
//! ```
//!
//! with `D^α` the Caputo derivative. Its solution is the convolution of the
//! stress with `(1/η^α) u^{α-1} E_{α,α}(-(u/τ)^α)`, `τ = η/E`, and the
//! response to unit stress is the creep function `k_α`.

use crate::error::{Error, Result};
use crate::fracops::{ml_kernel_convolve, ProductWeights, Signal};
use crate::special::{ml_eval, MlParams};

/// Material constants. The retardation time `τ = η/E` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoigtParams {
    eta: f64,
    e_mod: f64,
    alpha: f64,
    tau: f64,
}

impl VoigtParams {
    pub fn new(eta: f64, e_mod: f64, alpha: f64) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::domain("eta", eta, "must be positive and finite"));
        }
        if !(e_mod.is_finite() && e_mod > 0.0) {
            return Err(Error::domain("e_mod", e_mod, "must be positive and finite"));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain("alpha", alpha, "must lie in (0, 1]"));
        }
        Ok(VoigtParams {
            eta,
            e_mod,
            alpha,
            tau: eta / e_mod,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn e_mod(&self) -> f64 {
        self.e_mod
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// η^α.
    pub fn eta_alpha(&self) -> f64 {
        self.eta.powf(self.alpha)
    }

    /// τ^{-α}, the decay rate in the Mittag-Leffler argument.
    pub fn lambda(&self) -> f64 {
        self.tau.powf(-self.alpha)
    }

    /// Upper bound of the creep function, (τ/η)^α = E^{-α}.
    pub fn creep_limit(&self) -> f64 {
        self.e_mod.powf(-self.alpha)
    }
}

/// Strain produced by a stress history; zero at `t = 0`.
///
/// `σ(0) ≠ 0` is accepted: the convolution is well defined for any
/// continuous stress.
pub fn linear_strain(params: &VoigtParams, stress: &Signal) -> Result<Signal> {
    ml_kernel_convolve(params, stress)
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain("t", t, "must be nonnegative and finite"))
    }
}

/// Creep function `k_α(t) = (τ/η)^α (1 - E_α(-(t/τ)^α))`.
pub fn creep_function(params: &VoigtParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let p = MlParams::new(params.alpha, 1.0)?;
    let e = ml_eval(p, -(t / params.tau).powf(params.alpha))?;
    Ok(params.creep_limit() * (1.0 - e))
}

/// Creep function in the form `(1/η^α) t^α E_{α,α+1}(-(t/τ)^α)`.
pub fn creep_function_alt(params: &VoigtParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let a = params.alpha;
    let p = MlParams::new(a, a + 1.0)?;
    let e = ml_eval(p, -(t / params.tau).powf(a))?;
    Ok(t.powf(a) * e / params.eta_alpha())
}

/// Stopping rule and relaxation for the fixed-point solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once the sup-norm change between iterates drops below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Relaxation factor in (0, 1]; the update is
    /// `x ← (1 - damping) x + damping · T(x)`.
    pub damping: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-8,
            max_iter: 200,
            damping: 1.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::domain("tol", self.tol, "must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::domain("max_iter", 0.0, "must be at least 1"));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::domain("damping", self.damping, "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Outcome of a fixed-point iteration. Non-convergence is not an error:
/// the last iterate and the full history are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct PicardResult {
    pub solution: Signal,
    pub iterations: usize,
    /// Sup-norm change in the last iteration; equals the last entry of
    /// `diff_history`.
    pub final_diff: f64,
    pub converged: bool,
    pub diff_history: Vec<f64>,
}

/// Damped fixed-point iteration of `op` from `start`.
pub(crate) fn iterate(
    start: Signal,
    cfg: &SolverConfig,
    mut op: impl FnMut(&Signal) -> Result<Signal>,
) -> Result<PicardResult> {
    cfg.validate()?;
    let mut current = start;
    let mut history = Vec::new();
    for k in 1..=cfg.max_iter {
        let mut next = op(&current)?;
        if cfg.damping < 1.0 {
            next = current.combine(1.0 - cfg.damping, &next, cfg.damping)?;
        }
        let diff = next.sup_distance(&current)?;
        history.push(diff);
        log::debug!("picard iteration {k}: sup change {diff:e}");
        current = next;
        if diff < cfg.tol {
            return Ok(PicardResult {
                solution: current,
                iterations: k,
                final_diff: diff,
                converged: true,
                diff_history: history,
            });
        }
    }
    Ok(PicardResult {
        solution: current,
        iterations: cfg.max_iter,
        final_diff: *history.last().unwrap(),
        converged: false,
        diff_history: history,
    })
}

/// Successive approximations `ε_m = I^α σ/η^α - τ^{-α} I^α ε_{m-1}`,
/// `ε_0 = I^α σ/η^α`, stopped on the sup-norm change between iterates.
pub fn picard_linear(
    params: &VoigtParams,
    stress: &Signal,
    cfg: &SolverConfig,
) -> Result<PicardResult> {
    cfg.validate()?;
    let it = LinearIterates::new(params, stress)?;
    let start = it.forcing.clone();
    iterate(start, cfg, |e| it.step(e))
}

/// The undamped iterates `ε_0, ε_1, …` of [`picard_linear`].
#[derive(Debug, Clone)]
pub struct LinearIterates {
    weights: ProductWeights,
    forcing: Signal,
    lambda: f64,
    current: Option<Signal>,
}

impl LinearIterates {
    pub fn new(params: &VoigtParams, stress: &Signal) -> Result<Self> {
        let weights = ProductWeights::riemann_liouville(params.alpha, stress.grid())?;
        let forcing = weights.apply(stress)?.scale(1.0 / params.eta_alpha())?;
        Ok(LinearIterates {
            weights,
            forcing,
            lambda: params.lambda(),
            current: None,
        })
    }

    fn step(&self, prev: &Signal) -> Result<Signal> {
        let memory = self.weights.apply(prev)?;
        self.forcing.combine(1.0, &memory, -self.lambda)
    }
}

impl Iterator for LinearIterates {
    type Item = Result<Signal>;

    fn next(&mut self) -> Option<Self::Item> {
        let next = match &self.current {
            None => Ok(self.forcing.clone()),
            Some(prev) => self.step(prev),
        };
        if let Ok(s) = &next {
            self.current = Some(s.clone());
        }
        Some(next)
    }
}
