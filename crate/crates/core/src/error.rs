use thiserror::Error;

use crate::expr::EvalError;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("E_({alpha},{beta})({z}): argument outside the supported range [{min}, {max}]")]
    OutOfRange {
        alpha: f64,
        beta: f64,
        z: f64,
        min: f64,
        max: f64,
    },

    #[error("E_({alpha},{beta})({z}): no evaluation branch reached the target accuracy")]
    Accuracy { alpha: f64, beta: f64, z: f64 },

    #[error("E_({alpha},{beta})({z}) overflows a 64-bit float")]
    Overflow { alpha: f64, beta: f64, z: f64 },

    #[error("signal has {len} samples but its grid has {expected} points")]
    Length { len: usize, expected: usize },

    #[error("signal sample {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("signals are sampled on different grids")]
    GridMismatch,

    #[error("constitutive law evaluation failed at eps = {at}: {source}")]
    Law {
        at: f64,
        #[source]
        source: EvalError,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}
