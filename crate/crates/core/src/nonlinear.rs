//! The nonlinear model `η^α D^α ε + E^α ε = σ(ε)`, solved as the fixed point
//! of
//!
//! ```text
//! (Tε)(t) = (1/η^α) ∫₀ᵗ (t-s)^{α-1} E_{α,α}(-((t-s)/τ)^α) σ(ε(s)) ds
//! ```
//!
//! by Picard iteration from `ε ≡ 0`. Existence of a positive bounded
//! solution is known for continuous, convex, decreasing `σ` with
//! `σ(ε)/ε → ∞` at 0 and `→ 0` at ∞; [`check_hypotheses`] samples these
//! conditions but certifies nothing. Convergence of the iteration is
//! observed, not guaranteed, and is reported rather than assumed.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{self, Expression};
use crate::fracops::{Grid, ProductWeights, Signal};
use crate::voigt::{iterate, PicardResult, SolverConfig, VoigtParams};

/// Named constitutive laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinLaw {
    /// σ ≡ 0.
    Zero,
    /// σ ≡ 1.
    Unit,
    /// σ(ε) = 1/(1 + ε).
    Reciprocal,
    /// σ(ε) = e^{-ε}.
    ExpDecay,
}

impl BuiltinLaw {
    pub const ALL: [BuiltinLaw; 4] = [
        BuiltinLaw::Zero,
        BuiltinLaw::Unit,
        BuiltinLaw::Reciprocal,
        BuiltinLaw::ExpDecay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinLaw::Zero => "zero",
            BuiltinLaw::Unit => "unit",
            BuiltinLaw::Reciprocal => "reciprocal",
            BuiltinLaw::ExpDecay => "exp-decay",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == name)
    }

    fn eval(self, eps: f64) -> f64 {
        match self {
            BuiltinLaw::Zero => 0.0,
            BuiltinLaw::Unit => 1.0,
            BuiltinLaw::Reciprocal => 1.0 / (1.0 + eps),
            BuiltinLaw::ExpDecay => (-eps).exp(),
        }
    }
}

/// Piecewise-linear interpolation of `(ε_k, σ_k)` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LawTable {
    eps: Vec<f64>,
    sigma: Vec<f64>,
}

impl LawTable {
    /// `eps` must be strictly increasing; both columns finite and of equal
    /// length ≥ 2.
    pub fn new(eps: Vec<f64>, sigma: Vec<f64>) -> Result<Self> {
        if eps.len() != sigma.len() {
            return Err(Error::Length {
                len: sigma.len(),
                expected: eps.len(),
            });
        }
        if eps.len() < 2 {
            return Err(Error::domain(
                "table",
                eps.len() as f64,
                "needs at least two samples",
            ));
        }
        for (index, &value) in eps.iter().chain(&sigma).enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        if let Some(w) = eps.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::domain("eps", w[1], "table abscissae must increase"));
        }
        Ok(LawTable { eps, sigma })
    }

    fn range(&self) -> (f64, f64) {
        (self.eps[0], *self.eps.last().unwrap())
    }

    fn eval(&self, x: f64) -> f64 {
        let k = self
            .eps
            .partition_point(|&e| e <= x)
            .clamp(1, self.eps.len() - 1);
        let (x0, x1) = (self.eps[k - 1], self.eps[k]);
        let (y0, y1) = (self.sigma[k - 1], self.sigma[k]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LawKind {
    Builtin(BuiltinLaw),
    Expression(Expression),
    Table(LawTable),
}

/// Stress as a function of strain, defined on `[lower, bound]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstitutiveLaw {
    kind: LawKind,
    lower: f64,
    bound: f64,
}

impl ConstitutiveLaw {
    /// Built-in laws are defined on `[0, ∞)`.
    pub fn builtin(b: BuiltinLaw) -> Self {
        ConstitutiveLaw {
            kind: LawKind::Builtin(b),
            lower: 0.0,
            bound: f64::INFINITY,
        }
    }

    /// Law given as an expression in `eps`, defined on `[0, ∞)`.
    pub fn expression(src: &str) -> std::result::Result<Self, expr::ParseError> {
        Ok(Self::from_expression(expr::parse(src, "eps")?))
    }

    pub fn from_expression(e: Expression) -> Self {
        ConstitutiveLaw {
            kind: LawKind::Expression(e),
            lower: 0.0,
            bound: f64::INFINITY,
        }
    }

    /// Law interpolated from samples; defined on the sampled range.
    pub fn table(t: LawTable) -> Self {
        let (lower, bound) = t.range();
        ConstitutiveLaw {
            kind: LawKind::Table(t),
            lower,
            bound,
        }
    }

    /// Restrict the declared domain to `[lower, bound]`.
    pub fn with_domain(mut self, lower: f64, bound: f64) -> Result<Self> {
        if lower.is_nan() || bound.is_nan() || lower >= bound {
            return Err(Error::domain("bound", bound, "must exceed the lower end"));
        }
        if let LawKind::Table(t) = &self.kind {
            let (a, b) = t.range();
            if lower < a || bound > b {
                return Err(Error::domain("bound", bound, "outside the sampled range"));
            }
        }
        self.lower = lower;
        self.bound = bound;
        Ok(self)
    }

    pub fn kind(&self) -> &LawKind {
        &self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lower, self.bound)
    }

    /// σ(ε).
    pub fn eval(&self, eps: f64) -> Result<f64> {
        if !(eps >= self.lower && eps <= self.bound) {
            return Err(Error::domain(
                "eps",
                eps,
                "outside the law's declared domain",
            ));
        }
        let v = match &self.kind {
            LawKind::Builtin(b) => b.eval(eps),
            LawKind::Expression(e) => e
                .eval(eps)
                .map_err(|source| Error::Law { at: eps, source })?,
            LawKind::Table(t) => t.eval(eps),
        };
        Ok(v)
    }

    fn compose(&self, eps: &Signal) -> Result<Signal> {
        let values = eps
            .values()
            .iter()
            .map(|&e| self.eval(e))
            .collect::<Result<Vec<_>>>()?;
        Signal::new(eps.grid(), values)
    }
}

impl fmt::Display for ConstitutiveLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LawKind::Builtin(b) => f.write_str(b.name()),
            LawKind::Expression(e) => write!(f, "{e}"),
            LawKind::Table(t) => write!(f, "table of {} samples", t.eps.len()),
        }
    }
}

/// `T` with its product-integration weights computed once.
#[derive(Debug, Clone)]
pub struct Operator<'a> {
    law: &'a ConstitutiveLaw,
    weights: ProductWeights,
}

impl<'a> Operator<'a> {
    pub fn new(params: &VoigtParams, law: &'a ConstitutiveLaw, grid: Grid) -> Result<Self> {
        Ok(Operator {
            law,
            weights: ProductWeights::voigt_kernel(params, grid)?,
        })
    }

    pub fn apply(&self, eps: &Signal) -> Result<Signal> {
        self.weights.apply(&self.law.compose(eps)?)
    }

    /// `max_t |ε(t) - (Tε)(t)|`.
    pub fn residual(&self, eps: &Signal) -> Result<f64> {
        eps.sup_distance(&self.apply(eps)?)
    }
}

/// `Tε` on the grid of `eps`.
pub fn apply_t(params: &VoigtParams, law: &ConstitutiveLaw, eps: &Signal) -> Result<Signal> {
    Operator::new(params, law, eps.grid())?.apply(eps)
}

/// Picard iteration `ε^{k+1} = T ε^k` from `ε^0 ≡ 0`, optionally damped.
pub fn solve_nonlinear(
    params: &VoigtParams,
    law: &ConstitutiveLaw,
    grid: Grid,
    cfg: &SolverConfig,
) -> Result<PicardResult> {
    cfg.validate()?;
    let op = Operator::new(params, law, grid)?;
    iterate(Signal::zeros(grid), cfg, |e| op.apply(e))
}

/// Fixed-point residual `max_t |ε(t) - (Tε)(t)|`.
pub fn residual(params: &VoigtParams, law: &ConstitutiveLaw, eps: &Signal) -> Result<f64> {
    Operator::new(params, law, eps.grid())?.residual(eps)
}

/// Threshold above which `σ(ε)/ε` near 0 is taken as "infinite".
pub const E0_THRESH: f64 = 1e6;
/// Threshold below which `σ(ε)/ε` at large ε is taken as "zero".
pub const EINF_THRESH: f64 = 1e-6;

/// Where and how densely [`check_hypotheses`] samples the law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub eps_small: f64,
    pub upper: f64,
    pub samples: usize,
    pub tol: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            eps_small: 1e-8,
            upper: 1e8,
            samples: 200,
            tol: 1e-12,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_small > 0.0 && self.eps_small < self.upper && self.upper.is_finite()) {
            return Err(Error::domain(
                "eps_small",
                self.eps_small,
                "need 0 < eps_small < upper < ∞",
            ));
        }
        if self.samples < 3 {
            return Err(Error::domain(
                "samples",
                self.samples as f64,
                "need at least 3",
            ));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::domain("tol", self.tol, "must be nonnegative"));
        }
        Ok(())
    }

    /// `samples` log-spaced points from `eps_small` to `upper`.
    pub fn points(&self) -> Vec<f64> {
        let (a, b) = (self.eps_small.ln(), self.upper.ln());
        let last = self.samples - 1;
        (0..self.samples)
            .map(|k| match k {
                0 => self.eps_small,
                k if k == last => self.upper,
                k => (a + (b - a) * k as f64 / last as f64).exp(),
            })
            .collect()
    }
}

/// Sampled evidence for the existence hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisReport {
    pub is_decreasing: bool,
    pub is_convex: bool,
    pub sigma_at_zero: f64,
    /// σ(ε)/ε at `eps_small`.
    pub e0_estimate: f64,
    /// σ(ε)/ε at `upper`.
    pub e_inf_estimate: f64,
    pub verdict: bool,
}

/// Sample σ on a log-spaced set and test monotonicity, midpoint convexity
/// over all sampled pairs, and the limits of σ(ε)/ε against
/// [`E0_THRESH`] and [`EINF_THRESH`]. A heuristic, not a proof.
pub fn check_hypotheses(law: &ConstitutiveLaw, probe: &ProbeConfig) -> Result<HypothesisReport> {
    probe.validate()?;
    let xs = probe.points();
    let ys = xs
        .iter()
        .map(|&x| law.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let is_decreasing = ys.windows(2).all(|w| w[1] <= w[0] + probe.tol);
    let mut is_convex = true;
    'pairs: for i in 0..xs.len() {
        for j in i + 2..xs.len() {
            let mid = law.eval(0.5 * (xs[i] + xs[j]))?;
            if mid > 0.5 * (ys[i] + ys[j]) + probe.tol {
                is_convex = false;
                break 'pairs;
            }
        }
    }
    let sigma_at_zero = law.eval(0.0)?;
    let e0_estimate = ys[0] / xs[0];
    let e_inf_estimate = ys[ys.len() - 1] / xs[xs.len() - 1];
    let verdict = is_decreasing
        && is_convex
        && sigma_at_zero > 0.0
        && e0_estimate >= E0_THRESH
        && e_inf_estimate <= EINF_THRESH;
    Ok(HypothesisReport {
        is_decreasing,
        is_convex,
        sigma_at_zero,
        e0_estimate,
        e_inf_estimate,
        verdict,
    })
}
