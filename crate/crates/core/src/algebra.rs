//! Second-moment bookkeeping for linearized quadrature fluctuations.
//!
//! A measured or propagated quadrature at one analysis frequency is written
//! as a linear combination of independent noise sources. Each source has a
//! spectral variance in units of the quantum noise limit (vacuum = 1), so the
//! variance of any combination is the sum of squared coefficient magnitudes
//! weighted by the source variances.
//!
//! Quadratures follow `dX = exp(-i theta) a + exp(i theta) a^dagger`, which
//! puts a coherent state at variance 1.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Independent quadrature noise sources of the feed-forward network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NoiseMode {
    /// Amplitude quadrature of the input beam.
    InputAmplitude,
    /// Phase quadrature of the input beam (carries the signal).
    InputPhase,
    /// Amplitude quadrature of the vacuum entering the open tap port.
    TapVacuumAmplitude,
    /// Phase quadrature of the tap vacuum.
    TapVacuumPhase,
    /// Vacuum admitted by imperfect mode matching in the in-loop homodyne.
    HomodyneMismatchPhase,
    /// Vacuum admitted by the first in-loop photodiode's inefficiency.
    DetectorVacuum1,
    /// Vacuum admitted by the second in-loop photodiode's inefficiency.
    DetectorVacuum2,
}

impl NoiseMode {
    pub const ALL: [NoiseMode; 7] = [
        NoiseMode::InputAmplitude,
        NoiseMode::InputPhase,
        NoiseMode::TapVacuumAmplitude,
        NoiseMode::TapVacuumPhase,
        NoiseMode::HomodyneMismatchPhase,
        NoiseMode::DetectorVacuum1,
        NoiseMode::DetectorVacuum2,
    ];

    /// True for every source that is pure vacuum in the network model.
    pub fn is_vacuum(self) -> bool {
        !matches!(self, NoiseMode::InputAmplitude | NoiseMode::InputPhase)
    }
}

/// Complex coefficients over [`NoiseMode`]s at one analysis frequency.
///
/// Absent modes have coefficient exactly zero; stored coefficients are
/// always finite and nonzero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct QuadratureExpansion {
    coefficients: BTreeMap<NoiseMode, Complex64>,
    frequency: f64,
}

impl QuadratureExpansion {
    pub fn new(frequency: f64) -> Self {
        QuadratureExpansion {
            coefficients: BTreeMap::new(),
            frequency,
        }
    }

    /// Builds an expansion from `(mode, coefficient)` pairs. Repeated modes
    /// are summed and exact zeros dropped.
    pub fn from_terms<I, C>(frequency: f64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NoiseMode, C)>,
        C: Into<Complex64>,
    {
        let mut out = QuadratureExpansion::new(frequency);
        for (mode, c) in terms {
            let entry = out
                .coefficients
                .entry(mode)
                .or_insert(Complex64::new(0.0, 0.0));
            *entry += c.into();
        }
        out.normalize()?;
        Ok(out)
    }

    /// Single-mode expansion with unit coefficient.
    pub fn unit(mode: NoiseMode, frequency: f64) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(mode, Complex64::new(1.0, 0.0));
        QuadratureExpansion {
            coefficients,
            frequency,
        }
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn coefficient(&self, mode: NoiseMode) -> Complex64 {
        self.coefficients
            .get(&mode)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn contains(&self, mode: NoiseMode) -> bool {
        self.coefficients.contains_key(&mode)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NoiseMode, Complex64)> + '_ {
        self.coefficients.iter().map(|(m, c)| (*m, *c))
    }

    fn normalize(&mut self) -> Result<()> {
        if let Some((mode, _)) = self
            .coefficients
            .iter()
            .find(|(_, c)| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFinite(*mode));
        }
        self.coefficients.retain(|_, c| c.re != 0.0 || c.im != 0.0);
        Ok(())
    }
}

impl fmt::Display for QuadratureExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (mode, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c.im == 0.0 {
                write!(f, "{mode:?}: {:.4}", c.re)?;
            } else {
                write!(f, "{mode:?}: {:.4}{:+.4}i", c.re, c.im)?;
            }
        }
        write!(f, "}}")
    }
}

/// Coefficient-wise `ca * a + cb * b`.
pub fn scale_add(
    a: &QuadratureExpansion,
    ca: Complex64,
    b: &QuadratureExpansion,
    cb: Complex64,
) -> Result<QuadratureExpansion> {
    if a.frequency != b.frequency {
        return Err(Error::FrequencyMismatch {
            left: a.frequency,
            right: b.frequency,
        });
    }
    let terms = a
        .iter()
        .map(|(m, c)| (m, ca * c))
        .chain(b.iter().map(|(m, c)| (m, cb * c)));
    QuadratureExpansion::from_terms(a.frequency, terms)
}

/// Spectral variance of every noise source, in QNL units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceVariances {
    variance: BTreeMap<NoiseMode, f64>,
}

impl Default for SourceVariances {
    fn default() -> Self {
        Self::vacuum()
    }
}

impl SourceVariances {
    /// Every source at the quantum noise limit.
    pub fn vacuum() -> Self {
        SourceVariances {
            variance: NoiseMode::ALL.iter().map(|m| (*m, 1.0)).collect(),
        }
    }

    /// No entries at all; useful for exercising the missing-entry path.
    pub fn empty() -> Self {
        SourceVariances {
            variance: BTreeMap::new(),
        }
    }

    pub fn with(mut self, mode: NoiseMode, variance: f64) -> Result<Self> {
        if !(variance.is_finite() && variance >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "source variance",
                value: variance,
                reason: "must be finite and nonnegative",
            });
        }
        self.variance.insert(mode, variance);
        Ok(self)
    }

    pub fn get(&self, mode: NoiseMode) -> Option<f64> {
        self.variance.get(&mode).copied()
    }
}

/// `sum |c|^2 * V` over the modes present in `e`.
pub fn variance_of(e: &QuadratureExpansion, v: &SourceVariances) -> Result<f64> {
    e.iter().try_fold(0.0, |acc, (mode, c)| {
        let var = v.get(mode).ok_or(Error::MissingVariance(mode))?;
        Ok(acc + c.norm_sqr() * var)
    })
}

pub fn db_from_linear(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "linear power ratio",
            value: x,
            reason: "must be positive and finite",
        });
    }
    Ok(10.0 * x.log10())
}

pub fn linear_from_db(d: f64) -> f64 {
    10f64.powf(d / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use NoiseMode::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn exact_cancellation_empties() {
        let a = QuadratureExpansion::unit(InputPhase, 0.0);
        let out = scale_add(&a, c(2.0), &a, c(-2.0)).unwrap();
        assert!(out.is_empty());
        assert_eq!(variance_of(&out, &SourceVariances::vacuum()).unwrap(), 0.0);
    }

    #[test]
    fn beamsplitter_column() {
        let a = QuadratureExpansion::unit(InputAmplitude, 0.0);
        let b = QuadratureExpansion::unit(TapVacuumAmplitude, 0.0);
        let out = scale_add(&a, c(0.2f64.sqrt()), &b, c(-(0.8f64.sqrt()))).unwrap();
        assert!((out.coefficient(InputAmplitude).re - 0.4472).abs() < 1e-4);
        assert!((out.coefficient(TapVacuumAmplitude).re + 0.8944).abs() < 1e-4);
        let v = variance_of(&out, &SourceVariances::vacuum()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coefficients_add() {
        let a = QuadratureExpansion::from_terms(0.0, [(InputPhase, 0.2f64.sqrt())]).unwrap();
        let b = QuadratureExpansion::from_terms(0.0, [(InputPhase, 2.0 * 0.8f64.sqrt())]).unwrap();
        let out = scale_add(&a, c(1.0), &b, c(1.0)).unwrap();
        assert!((out.coefficient(InputPhase).re - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn frequency_mismatch_rejected() {
        let a = QuadratureExpansion::unit(InputPhase, 25e6);
        let b = QuadratureExpansion::unit(InputPhase, 25.0003e6);
        assert!(matches!(
            scale_add(&a, c(1.0), &b, c(1.0)),
            Err(Error::FrequencyMismatch { .. })
        ));
    }

    #[test]
    fn variance_examples() {
        let vac = SourceVariances::vacuum();
        let e = QuadratureExpansion::unit(InputAmplitude, 0.0);
        assert_eq!(variance_of(&e, &vac).unwrap(), 1.0);

        let e = QuadratureExpansion::from_terms(0.0, [(InputPhase, 5f64.sqrt())]).unwrap();
        let v = vac.clone().with(InputPhase, 1.0).unwrap();
        assert!((variance_of(&e, &v).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn missing_variance_rejected() {
        let e = QuadratureExpansion::unit(DetectorVacuum2, 0.0);
        let v = SourceVariances::empty().with(DetectorVacuum1, 1.0).unwrap();
        assert!(matches!(
            variance_of(&e, &v),
            Err(Error::MissingVariance(DetectorVacuum2))
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let r = QuadratureExpansion::from_terms(0.0, [(InputPhase, f64::NAN)]);
        assert!(matches!(r, Err(Error::NonFinite(InputPhase))));
        let r = QuadratureExpansion::from_terms(0.0, [(InputPhase, f64::INFINITY)]);
        assert!(r.is_err());
    }

    #[test]
    fn db_examples() {
        assert_eq!(db_from_linear(1.0).unwrap(), 0.0);
        assert!((db_from_linear(6.31).unwrap() - 8.0).abs() < 5e-3);
        assert!((linear_from_db(17.6) - 57.54).abs() < 5e-3);
        assert!(db_from_linear(0.0).is_err());
        assert!(db_from_linear(-1.0).is_err());
    }
}
