//! Output spectrum as a function of the verification LO phase.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::db_from_linear;
use crate::detection::detected_variance;
use crate::error::{Error, Result};
use crate::network::{spectrum_coefficient, spectrum_paper, NetworkParams};

pub const DEFAULT_POINTS: usize = 361;
pub const MIN_POINTS: usize = 8;

/// Which closed form evaluates the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// The published closed form with its angle-dependent input prefactor.
    #[default]
    Paper,
    /// Direct second moments of the output expansion.
    Coefficient,
}

impl Formula {
    pub fn evaluate(self, p: &NetworkParams, phi: f64) -> f64 {
        match self {
            Formula::Paper => spectrum_paper(p, phi),
            Formula::Coefficient => spectrum_coefficient(p, phi),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::Paper => "paper",
            Formula::Coefficient => "coefficient",
        })
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Formula::Paper),
            "coefficient" => Ok(Formula::Coefficient),
            other => Err(Error::Malformed(format!("unknown formula `{other}`"))),
        }
    }
}

/// LO-phase samples of the output spectrum.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepTrace {
    pub phase: Vec<f64>,
    pub variance_linear: Vec<f64>,
    pub variance_db: Vec<f64>,
    /// Whether the verification detector's loss was applied.
    pub detected: bool,
}

impl SweepTrace {
    /// Builds a trace from phases and linear variances, filling in dB.
    pub fn from_linear(phase: Vec<f64>, variance_linear: Vec<f64>, detected: bool) -> Result<Self> {
        if phase.len() != variance_linear.len() {
            return Err(Error::Malformed(format!(
                "{} phases but {} variances",
                phase.len(),
                variance_linear.len()
            )));
        }
        let variance_db = variance_linear
            .iter()
            .map(|v| db_from_linear(*v))
            .collect::<Result<Vec<_>>>()?;
        Ok(SweepTrace {
            phase,
            variance_linear,
            variance_db,
            detected,
        })
    }

    pub fn len(&self) -> usize {
        self.phase.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phase.is_empty()
    }
}

/// `n_points` phases spaced uniformly over `[0, 2 pi]`, both ends included.
pub fn uniform_phases(n_points: usize) -> Vec<f64> {
    let step = TAU / (n_points - 1) as f64;
    (0..n_points).map(|i| i as f64 * step).collect()
}

/// Evaluates `formula` across the LO phase, optionally through the
/// verification detector (`eta_det2`).
pub fn run_sweep(
    p: &NetworkParams,
    n_points: usize,
    formula: Formula,
    detected: bool,
) -> Result<SweepTrace> {
    if n_points < MIN_POINTS {
        return Err(Error::InvalidParameter {
            name: "n_points",
            value: n_points as f64,
            reason: "a sweep needs at least 8 points",
        });
    }
    let phase = uniform_phases(n_points);
    let variance = model_at(p, &phase, formula, detected);
    SweepTrace::from_linear(phase, variance, detected)
}

pub(crate) fn model_at(
    p: &NetworkParams,
    phase: &[f64],
    formula: Formula,
    detected: bool,
) -> Vec<f64> {
    phase
        .iter()
        .map(|&phi| {
            let v = formula.evaluate(p, phi);
            if detected {
                detected_variance(v, p.eta_det2())
            } else {
                v
            }
        })
        .collect()
}

/// One LO angle of the comparison between the two spectrum forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub phase_rad: f64,
    pub paper: f64,
    pub coefficient: f64,
    pub difference: f64,
    pub relative: f64,
}

/// Tabulates [`spectrum_paper`] against [`spectrum_coefficient`] over a
/// uniform LO sweep. They coincide on the quadrature axes and whenever the
/// input phase variance is 1.
pub fn divergence_table(p: &NetworkParams, n_points: usize) -> Result<Vec<DivergenceRow>> {
    if n_points < MIN_POINTS {
        return Err(Error::InvalidParameter {
            name: "n_points",
            value: n_points as f64,
            reason: "a sweep needs at least 8 points",
        });
    }
    Ok(uniform_phases(n_points)
        .into_iter()
        .map(|phi| {
            let paper = spectrum_paper(p, phi);
            let coefficient = spectrum_coefficient(p, phi);
            DivergenceRow {
                phase_rad: phi,
                paper,
                coefficient,
                difference: paper - coefficient,
                relative: (paper - coefficient) / coefficient,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passive_trace_is_flat() {
        let p = NetworkParams::builder().epsilon(0.4).build().unwrap();
        let t = run_sweep(&p, 37, Formula::Paper, false).unwrap();
        assert!(t.variance_db.iter().all(|d| d.abs() < 1e-12));
    }

    #[test]
    fn experiment_trace_levels() {
        let p = NetworkParams::experiment()
            .with_v_phase_in(10f64.powf(0.86))
            .unwrap();
        let t = run_sweep(&p, DEFAULT_POINTS, Formula::Paper, true).unwrap();
        // 0.8008 * 71.030526 + 0.1992 = 57.080446 -> 17.564874 dB
        assert!((t.variance_db[90] - 17.564874).abs() < 1e-5);
        assert!((t.variance_db[270] - 17.564874).abs() < 1e-5);
        assert!(t.variance_db[0].abs() < 1e-12);
        assert!(t.variance_db[180].abs() < 1e-12);
        let max = t.variance_linear.iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(max, t.variance_linear[90].max(t.variance_linear[270]));
    }

    #[test]
    fn divergence_vanishes_on_axes() {
        let p = NetworkParams::experiment();
        let table = divergence_table(&p, 9).unwrap();
        for (i, row) in table.iter().enumerate() {
            if i % 2 == 0 {
                assert!(row.relative.abs() < 1e-12, "{row:?}");
            } else {
                assert!(row.relative.abs() > 1e-3, "{row:?}");
            }
        }
    }

    #[test]
    fn too_few_points() {
        let p = NetworkParams::experiment();
        assert!(run_sweep(&p, 7, Formula::Coefficient, false).is_err());
    }

    #[test]
    fn mismatched_lengths() {
        assert!(SweepTrace::from_linear(vec![0.0, 1.0], vec![1.0], false).is_err());
    }

    #[test]
    fn formula_names() {
        assert_eq!("paper".parse::<Formula>().unwrap(), Formula::Paper);
        assert_eq!(Formula::Coefficient.to_string(), "coefficient");
        assert!("closed".parse::<Formula>().is_err());
    }
}
