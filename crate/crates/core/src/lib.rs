//! Fractional Voigt viscoelasticity: Mittag-Leffler functions, fractional
//! integrals and Picard solvers for linear and nonlinear constitutive laws.

pub mod cli;
pub mod csvio;
pub mod error;
pub mod expr;
pub mod fracops;
pub mod gamma;
pub mod nonlinear;
mod quad;
pub mod special;
pub mod voigt;

pub use error::{Error, Result};
pub use fracops::{Grid, Signal};
pub use special::MlParams;
pub use voigt::{PicardResult, SolverConfig, VoigtParams};
