//! Loss on the detectors and inference of signal-to-noise ratios from
//! measured spectrum-analyzer levels.
//!
//! A detector of overall efficiency `eta` sees a variance `v` as
//! `eta * v + (1 - eta)`. Going backwards, a measured level pair (signal
//! bin, adjacent noise bin) gives the detected SNR directly and the SNR of
//! the beam itself once the vacuum admitted by the loss is removed from the
//! noise.

use serde::{Deserialize, Serialize};

use crate::algebra::linear_from_db;
use crate::error::{check_range, Error, Result};

/// Variance measured through a detector of efficiency `eta`.
pub fn detected_variance(v: f64, eta: f64) -> f64 {
    eta * v + (1.0 - eta)
}

/// Detected and inferred SNR for one measurement stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageSnr {
    pub detected: f64,
    pub inferred: f64,
}

/// SNR of a stage from its signal-bin level `total_db` and noise-bin level
/// `noise_db` (both relative to the QNL) measured with efficiency `eta`.
pub fn infer_snr(total_db: f64, noise_db: f64, eta: f64) -> Result<StageSnr> {
    check_range("eta", eta, 0.0, 1.0)?;
    if !(total_db.is_finite() && noise_db.is_finite()) || total_db < noise_db {
        return Err(Error::InvalidParameter {
            name: "total_db",
            value: total_db,
            reason: "signal level must be finite and not below the noise level",
        });
    }
    let total = linear_from_db(total_db);
    let noise = linear_from_db(noise_db);
    let floor = 1.0 - eta;
    if noise <= floor {
        return Err(Error::NonPositiveNoise { noise, floor });
    }
    let signal = total - noise;
    Ok(StageSnr {
        detected: signal / noise,
        inferred: signal / (noise - floor),
    })
}

/// Measured levels for one stage, in dB above the QNL.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageLevels {
    pub total_db: f64,
    pub noise_db: f64,
    pub eta: f64,
}

/// Levels measured before and after the feed-forward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrLevels {
    pub input: StageLevels,
    pub output: StageLevels,
}

impl SnrLevels {
    /// The experiment: 8.0 dB over the QNL through the in-loop homodyne,
    /// then 17.6 dB over a 9.5 dB floor through the verification homodyne.
    pub fn experiment() -> SnrLevels {
        use crate::network::experiment as x;
        SnrLevels {
            input: StageLevels {
                total_db: x::INPUT_DETECTED_DB,
                noise_db: 0.0,
                eta: x::ETA_H1 * x::ETA_D1,
            },
            output: StageLevels {
                total_db: x::OUTPUT_SIGNAL_DB,
                noise_db: x::OUTPUT_NOISE_DB,
                eta: x::ETA_H2 * x::ETA_D2,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrReport {
    pub snr_detected_in: f64,
    pub snr_inferred_in: f64,
    pub snr_detected_out: f64,
    pub snr_inferred_out: f64,
    pub t_s: f64,
}

/// Infers both stages and the signal transfer ratio between them.
pub fn report_snr(levels: &SnrLevels) -> Result<SnrReport> {
    let input = infer_snr(
        levels.input.total_db,
        levels.input.noise_db,
        levels.input.eta,
    )?;
    let output = infer_snr(
        levels.output.total_db,
        levels.output.noise_db,
        levels.output.eta,
    )?;
    if input.inferred <= 0.0 {
        return Err(Error::UndefinedTransfer("input stage carries no signal"));
    }
    Ok(SnrReport {
        snr_detected_in: input.detected,
        snr_inferred_in: input.inferred,
        snr_detected_out: output.detected,
        snr_inferred_out: output.inferred,
        t_s: output.inferred / input.inferred,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_survives_loss() {
        for eta in [0.1, 0.5, 0.8008, 1.0] {
            assert_eq!(detected_variance(1.0, eta), 1.0);
        }
        // 0.8008 * 11.24 + 0.1992
        assert!((detected_variance(11.24, 0.8008) - 9.200192).abs() < 1e-12);
    }

    #[test]
    fn experiment_stages() {
        let input = infer_snr(8.0, 0.0, 0.8554).unwrap();
        assert!((input.inferred - 6.207124).abs() < 1e-6);
        let output = infer_snr(17.6, 9.5, 0.8008).unwrap();
        assert!((output.inferred - 5.581287).abs() < 1e-6);
        assert!((output.detected - 5.456542).abs() < 1e-6);
    }

    #[test]
    fn no_signal_gives_zero() {
        let s = infer_snr(3.0, 3.0, 0.7).unwrap();
        assert_eq!(s.detected, 0.0);
        assert_eq!(s.inferred, 0.0);
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(infer_snr(1.0, 2.0, 0.9).is_err());
        // noise 10^-1.5 = 0.0316 < 1 - 0.5
        assert!(matches!(
            infer_snr(5.0, -15.0, 0.5),
            Err(Error::NonPositiveNoise { .. })
        ));
        assert!(infer_snr(5.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn report_chain() {
        let r = report_snr(&SnrLevels::experiment()).unwrap();
        assert!((r.t_s - 0.899175).abs() < 1e-6);
        assert_eq!(r.t_s, r.snr_inferred_out / r.snr_inferred_in);
    }

    #[test]
    fn report_without_signal_is_undefined() {
        let stage = StageLevels {
            total_db: 0.0,
            noise_db: 0.0,
            eta: 0.9,
        };
        let r = report_snr(&SnrLevels {
            input: stage,
            output: stage,
        });
        assert!(matches!(r, Err(Error::UndefinedTransfer(_))));
    }

    #[test]
    fn lossless_identity() {
        let stage = StageLevels {
            total_db: 8.0,
            noise_db: 0.0,
            eta: 1.0,
        };
        let r = report_snr(&SnrLevels {
            input: stage,
            output: stage,
        })
        .unwrap();
        assert_eq!(r.t_s, 1.0);
    }
}
