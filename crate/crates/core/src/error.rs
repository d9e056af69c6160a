use std::path::PathBuf;

use crate::algebra::NoiseMode;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("frequency mismatch: {left} Hz vs {right} Hz")]
    FrequencyMismatch { left: f64, right: f64 },

    #[error("no source variance given for {0:?}")]
    MissingVariance(NoiseMode),

    #[error("non-finite coefficient for {0:?}")]
    NonFinite(NoiseMode),

    #[error("sample rate {sample_rate} Hz does not exceed twice the signal frequency {signal_frequency} Hz")]
    Nyquist {
        sample_rate: f64,
        signal_frequency: f64,
    },

    #[error("too few samples: {got} available, {needed} required")]
    TooFewSamples { got: usize, needed: usize },

    #[error("degenerate trace: {0}")]
    DegenerateTrace(&'static str),

    #[error("inferred noise is not positive: detected noise {noise} <= 1 - eta = {floor}")]
    NonPositiveNoise { noise: f64, floor: f64 },

    #[error("transfer ratio undefined: {0}")]
    UndefinedTransfer(&'static str),

    #[error("unsupported kernel for analytic comparison: {0}")]
    UnsupportedKernel(&'static str),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo_exclusive: f64,
    hi_inclusive: f64,
) -> Result<()> {
    if value.is_finite() && value > lo_exclusive && value <= hi_inclusive {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "out of range",
        })
    }
}
