//! Uniform grids, sampled signals and the two weakly singular convolutions
//! every solver is built from:
//!
//! * the Riemann–Liouville integral `(I^α f)(t) = 1/Γ(α) ∫₀ᵗ (t-s)^{α-1} f(s) ds`,
//! * the Mittag-Leffler kernel convolution
//!   `(1/η^α) ∫₀ᵗ (t-s)^{α-1} E_{α,α}(-((t-s)/τ)^α) f(s) ds`.
//!
//! Both use product integration: `f` is replaced by its piecewise-linear
//! interpolant and the whole kernel is integrated against it exactly, via
//! its first two antiderivatives
//!
//! ```text
//! A1(u) = ∫₀ᵘ k = u^α E_{α,α+1}(-λu^α),   A2(u) = ∫₀ᵘ A1 = u^{α+1} E_{α,α+2}(-λu^α)
//! ```
//!
//! (λ = τ^{-α}; for the plain fractional integral λ = 0 and the
//! antiderivatives are the powers `u^α/Γ(α+1)` and `u^{α+1}/Γ(α+2)`).
//! Constant and linear data are therefore integrated exactly, and on smooth
//! data the error is O(h²). On a uniform grid the weights depend only on the
//! lag, so one convolution costs `2(n+1)` kernel evaluations plus an O(n²)
//! sum.

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::special::{ml_eval, MlParams};
use crate::voigt::VoigtParams;

/// Uniform grid `0 = t₀ < t₁ < … < t_n = t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    t_end: f64,
    n: usize,
}

impl Grid {
    pub fn new(t_end: f64, n: usize) -> Result<Self> {
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(Error::domain("t_end", t_end, "must be positive and finite"));
        }
        if n == 0 {
            return Err(Error::domain(
                "n",
                0.0,
                "a grid needs at least one interval",
            ));
        }
        Ok(Grid { t_end, n })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, `n + 1`.
    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn h(&self) -> f64 {
        self.t_end / self.n as f64
    }

    /// `t_i = i h`; the last point is exactly `t_end`.
    pub fn point(&self, i: usize) -> f64 {
        if i == self.n {
            self.t_end
        } else {
            i as f64 * self.h()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.point(i)).collect()
    }
}

/// Finite samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: Grid,
    values: Vec<f64>,
}

impl Signal {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Length {
                len: values.len(),
                expected: grid.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Signal { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        Signal {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Sample `f` at the grid points.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Signal::new(grid, grid.points().into_iter().map(f).collect())
    }

    /// Sample a fallible `f` at the grid points, stopping at the first error.
    pub fn try_from_fn<E>(grid: Grid, mut f: impl FnMut(f64) -> Result<f64, E>) -> Result<Self, E>
    where
        E: From<Error>,
    {
        let values = grid
            .points()
            .into_iter()
            .map(&mut f)
            .collect::<Result<Vec<_>, E>>()?;
        Ok(Signal::new(grid, values)?)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Pairs `(t_i, value_i)`.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.grid.point(i), v))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max_i |self_i - other_i|`.
    pub fn sup_distance(&self, other: &Signal) -> Result<f64> {
        self.same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Signal, b: f64) -> Result<Signal> {
        self.same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Signal::new(self.grid, values)
    }

    pub fn scale(&self, a: f64) -> Result<Signal> {
        Signal::new(self.grid, self.values.iter().map(|v| a * v).collect())
    }

    /// Apply `f` sample by sample.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Signal> {
        Signal::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    fn same_grid(&self, other: &Signal) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// Product-integration weights for one kernel on one grid.
///
/// `apply` computes `out_i = Σ_{m=1}^{i} far_m f_{i-m} + near_m f_{i-m+1}`,
/// where lag `m` covers `t_i - s ∈ [(m-1)h, mh]`.
#[derive(Debug, Clone)]
pub struct ProductWeights {
    grid: Grid,
    far: Vec<f64>,
    near: Vec<f64>,
}

impl ProductWeights {
    /// Weights for `I^α`.
    pub fn riemann_liouville(alpha: f64, grid: Grid) -> Result<Self> {
        check_alpha(alpha)?;
        let c1 = rgamma(alpha + 1.0);
        let c2 = rgamma(alpha + 2.0);
        Self::from_antiderivatives(
            grid,
            |u| Ok(c1 * u.powf(alpha)),
            |u| Ok(c2 * u.powf(alpha + 1.0)),
        )
    }

    /// Weights for the Mittag-Leffler kernel of the Voigt model, including
    /// the `1/η^α` factor.
    pub fn voigt_kernel(params: &VoigtParams, grid: Grid) -> Result<Self> {
        let alpha = params.alpha();
        let lambda = params.lambda();
        let scale = 1.0 / params.eta_alpha();
        let p1 = MlParams::new(alpha, alpha + 1.0)?;
        let p2 = MlParams::new(alpha, alpha + 2.0)?;
        Self::from_antiderivatives(
            grid,
            |u| Ok(scale * u.powf(alpha) * ml_eval(p1, -lambda * u.powf(alpha))?),
            |u| Ok(scale * u.powf(alpha + 1.0) * ml_eval(p2, -lambda * u.powf(alpha))?),
        )
    }

    fn from_antiderivatives(
        grid: Grid,
        a1: impl Fn(f64) -> Result<f64>,
        a2: impl Fn(f64) -> Result<f64>,
    ) -> Result<Self> {
        let h = grid.h();
        let n = grid.n();
        let mut prev1 = 0.0;
        let mut prev2 = 0.0;
        let mut far = Vec::with_capacity(n + 1);
        let mut near = Vec::with_capacity(n + 1);
        far.push(0.0);
        near.push(0.0);
        for m in 1..=n {
            let u = m as f64 * h;
            let (v1, v2) = (a1(u)?, a2(u)?);
            let mean = (v2 - prev2) / h;
            far.push(v1 - mean);
            near.push(mean - prev1);
            prev1 = v1;
            prev2 = v2;
        }
        Ok(ProductWeights { grid, far, near })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn apply(&self, f: &Signal) -> Result<Signal> {
        if f.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let v = f.values();
        let out = (0..self.grid.len())
            .map(|i| {
                // an empty float sum is -0.0
                (1..=i).fold(0.0, |acc, m| {
                    acc + self.far[m] * v[i - m] + self.near[m] * v[i - m + 1]
                })
            })
            .collect();
        Signal::new(self.grid, out)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "must lie in (0, 1]"))
    }
}

/// `(I^α f)` on the grid of `f`; zero at `t = 0`.
pub fn rl_integral(alpha: f64, f: &Signal) -> Result<Signal> {
    ProductWeights::riemann_liouville(alpha, f.grid())?.apply(f)
}

/// `(1/η^α) ∫₀ᵗ (t-s)^{α-1} E_{α,α}(-((t-s)/τ)^α) f(s) ds` on the grid of `f`.
pub fn ml_kernel_convolve(params: &VoigtParams, f: &Signal) -> Result<Signal> {
    ProductWeights::voigt_kernel(params, f.grid())?.apply(f)
}
