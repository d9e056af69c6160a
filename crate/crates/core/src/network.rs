//! Analytic model of the phase feed-forward network.
//!
//! A beamsplitter of transmissivity `epsilon` sends `1 - epsilon` of the
//! input to an in-loop homodyne detector locked to the phase quadrature. Its
//! photocurrent, scaled by the electronic gain `K`, drives a phase modulator
//! on the transmitted beam. At a single analysis frequency the output
//! quadrature at LO angle `phi` is a linear combination of seven independent
//! noise sources (see [`NoiseMode`]).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{variance_of, NoiseMode, QuadratureExpansion, SourceVariances};
use crate::error::{check_range, Error, Result};

/// Parameters measured or quoted for the experimental run.
pub mod experiment {
    /// Fraction of the beam transmitted to the modulator arm.
    pub const EPSILON: f64 = 0.2;
    /// In-loop homodyne mode-matching efficiency.
    pub const ETA_H1: f64 = 0.94;
    /// In-loop photodiode quantum efficiency.
    pub const ETA_D1: f64 = 0.91;
    /// Verification homodyne mode-matching efficiency.
    pub const ETA_H2: f64 = 0.88;
    /// Verification photodiode quantum efficiency.
    pub const ETA_D2: f64 = 0.91;
    /// Gain that reproduces the measured LO sweep.
    pub const GAIN_FIT: f64 = 3.2;
    /// Input signal as detected with the whole beam on the in-loop homodyne.
    pub const INPUT_DETECTED_DB: f64 = 8.0;
    /// Input signal level after correcting for in-loop detection losses.
    pub const INPUT_INFERRED_DB: f64 = 8.6;
    /// Output signal on the phase quadrature.
    pub const OUTPUT_SIGNAL_DB: f64 = 17.6;
    /// Output noise floor next to the signal frequency.
    pub const OUTPUT_NOISE_DB: f64 = 9.5;
    pub const SIGNAL_FREQUENCY: f64 = 25.0e6;
    pub const NOISE_FREQUENCY: f64 = 25.0003e6;
}

/// Network parameters at one analysis frequency.
///
/// Constructed through [`NetworkParams::builder`]; every instance satisfies
/// `0 < epsilon <= 1`, efficiencies in `(0, 1]`, `v_phase_in >= 1` and a
/// finite gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct NetworkParams {
    epsilon: f64,
    eta_h1: f64,
    eta_d1: f64,
    gain: Complex64,
    v_phase_in: f64,
    eta_det2: f64,
    frequency: f64,
}

/// Serialized form of [`NetworkParams`]; gain is a number or `[re, im]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParams {
    pub epsilon: f64,
    pub eta_h1: f64,
    pub eta_d1: f64,
    #[serde(default)]
    pub gain: GainValue,
    #[serde(default = "one")]
    pub v_phase_in: f64,
    #[serde(default = "one")]
    pub eta_det2: f64,
    #[serde(default = "default_frequency")]
    pub frequency: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GainValue {
    Real(f64),
    Complex([f64; 2]),
}

impl Default for GainValue {
    fn default() -> Self {
        GainValue::Real(0.0)
    }
}

fn one() -> f64 {
    1.0
}

fn default_frequency() -> f64 {
    experiment::SIGNAL_FREQUENCY
}

impl TryFrom<RawParams> for NetworkParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        let gain = match raw.gain {
            GainValue::Real(k) => Complex64::new(k, 0.0),
            GainValue::Complex([re, im]) => Complex64::new(re, im),
        };
        NetworkParams::builder()
            .epsilon(raw.epsilon)
            .eta_h1(raw.eta_h1)
            .eta_d1(raw.eta_d1)
            .gain(gain)
            .v_phase_in(raw.v_phase_in)
            .eta_det2(raw.eta_det2)
            .frequency(raw.frequency)
            .build()
    }
}

impl From<NetworkParams> for RawParams {
    fn from(p: NetworkParams) -> Self {
        let gain = if p.gain.im == 0.0 {
            GainValue::Real(p.gain.re)
        } else {
            GainValue::Complex([p.gain.re, p.gain.im])
        };
        RawParams {
            epsilon: p.epsilon,
            eta_h1: p.eta_h1,
            eta_d1: p.eta_d1,
            gain,
            v_phase_in: p.v_phase_in,
            eta_det2: p.eta_det2,
            frequency: p.frequency,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NetworkParamsBuilder {
    params: NetworkParams,
}

impl NetworkParamsBuilder {
    pub fn epsilon(mut self, epsilon: f64) -> Self {
        self.params.epsilon = epsilon;
        self
    }

    pub fn eta_h1(mut self, eta: f64) -> Self {
        self.params.eta_h1 = eta;
        self
    }

    pub fn eta_d1(mut self, eta: f64) -> Self {
        self.params.eta_d1 = eta;
        self
    }

    pub fn gain(mut self, gain: impl Into<Complex64>) -> Self {
        self.params.gain = gain.into();
        self
    }

    pub fn v_phase_in(mut self, v: f64) -> Self {
        self.params.v_phase_in = v;
        self
    }

    pub fn eta_det2(mut self, eta: f64) -> Self {
        self.params.eta_det2 = eta;
        self
    }

    pub fn frequency(mut self, hz: f64) -> Self {
        self.params.frequency = hz;
        self
    }

    pub fn build(self) -> Result<NetworkParams> {
        self.params.validate()?;
        Ok(self.params)
    }
}

impl NetworkParams {
    /// Starts from a lossless, passive (`K = 0`), fully transmitting network
    /// with a QNL input.
    pub fn builder() -> NetworkParamsBuilder {
        NetworkParamsBuilder {
            params: NetworkParams {
                epsilon: 1.0,
                eta_h1: 1.0,
                eta_d1: 1.0,
                gain: Complex64::new(0.0, 0.0),
                v_phase_in: 1.0,
                eta_det2: 1.0,
                frequency: experiment::SIGNAL_FREQUENCY,
            },
        }
    }

    /// The experimental configuration: 80/20 tap, fitted gain 3.2, input
    /// phase variance at the inferred signal level and the verification
    /// homodyne losses.
    pub fn experiment() -> NetworkParams {
        NetworkParams::builder()
            .epsilon(experiment::EPSILON)
            .eta_h1(experiment::ETA_H1)
            .eta_d1(experiment::ETA_D1)
            .gain(experiment::GAIN_FIT)
            .v_phase_in(crate::algebra::linear_from_db(
                experiment::INPUT_INFERRED_DB,
            ))
            .eta_det2(experiment::ETA_H2 * experiment::ETA_D2)
            .build()
            .expect("experimental parameters are valid")
    }

    pub fn validate(&self) -> Result<()> {
        check_range("epsilon", self.epsilon, 0.0, 1.0)?;
        check_range("eta_h1", self.eta_h1, 0.0, 1.0)?;
        check_range("eta_d1", self.eta_d1, 0.0, 1.0)?;
        check_range("eta_det2", self.eta_det2, 0.0, 1.0)?;
        if !(self.v_phase_in.is_finite() && self.v_phase_in >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "v_phase_in",
                value: self.v_phase_in,
                reason: "must be finite and at least 1 (QNL)",
            });
        }
        if !(self.gain.re.is_finite() && self.gain.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "gain",
                value: self.gain.re,
                reason: "must be finite",
            });
        }
        if !self.frequency.is_finite() {
            return Err(Error::InvalidParameter {
                name: "frequency",
                value: self.frequency,
                reason: "must be finite",
            });
        }
        Ok(())
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn eta_h1(&self) -> f64 {
        self.eta_h1
    }

    pub fn eta_d1(&self) -> f64 {
        self.eta_d1
    }

    /// Combined in-loop efficiency `eta_h1 * eta_d1`.
    pub fn eta_loop(&self) -> f64 {
        self.eta_h1 * self.eta_d1
    }

    pub fn gain(&self) -> Complex64 {
        self.gain
    }

    pub fn v_phase_in(&self) -> f64 {
        self.v_phase_in
    }

    pub fn eta_det2(&self) -> f64 {
        self.eta_det2
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Same network with another electronic gain.
    ///
    /// # Panics
    ///
    /// If `gain` is not finite.
    pub fn with_gain(&self, gain: impl Into<Complex64>) -> NetworkParams {
        let gain = gain.into();
        assert!(
            gain.re.is_finite() && gain.im.is_finite(),
            "gain must be finite"
        );
        NetworkParams { gain, ..*self }
    }

    pub fn with_v_phase_in(&self, v: f64) -> Result<NetworkParams> {
        let p = NetworkParams {
            v_phase_in: v,
            ..*self
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_eta_det2(&self, eta: f64) -> Result<NetworkParams> {
        let p = NetworkParams {
            eta_det2: eta,
            ..*self
        };
        p.validate()?;
        Ok(p)
    }

    /// Source variances seen by the network: input phase at `v_phase_in`,
    /// everything else at the QNL.
    pub fn source_variances(&self) -> SourceVariances {
        SourceVariances::vacuum()
            .with(NoiseMode::InputPhase, self.v_phase_in)
            .expect("validated phase variance")
    }

    /// Coefficient multiplying the input phase quadrature at `phi = pi/2`.
    fn signal_amplitude(&self) -> Complex64 {
        let eps = self.epsilon;
        self.gain * (self.eta_loop() * (1.0 - eps)).sqrt() + eps.sqrt()
    }

    /// Coefficient multiplying the tap vacuum phase quadrature at `phi = pi/2`.
    fn tap_residual(&self) -> Complex64 {
        let eps = self.epsilon;
        self.gain * (self.eta_loop() * eps).sqrt() - (1.0 - eps).sqrt()
    }

    /// Signal power gain `|sqrt(eps) + K sqrt(eta_h eta_d (1 - eps))|^2`.
    pub fn signal_power_gain(&self) -> f64 {
        self.signal_amplitude().norm_sqr()
    }
}

/// Output quadrature at LO angle `phi` expanded over the noise sources.
pub fn output_expansion(p: &NetworkParams, phi: f64) -> QuadratureExpansion {
    let (s, c) = phi.sin_cos();
    let eps = p.epsilon;
    let k = p.gain;
    let detector = k * s * ((1.0 - p.eta_d1).sqrt() / std::f64::consts::SQRT_2);
    let terms = [
        (
            NoiseMode::InputAmplitude,
            Complex64::new(eps.sqrt() * c, 0.0),
        ),
        (NoiseMode::InputPhase, p.signal_amplitude() * s),
        (
            NoiseMode::TapVacuumAmplitude,
            Complex64::new(-(1.0 - eps).sqrt() * c, 0.0),
        ),
        (NoiseMode::TapVacuumPhase, p.tap_residual() * s),
        (
            NoiseMode::HomodyneMismatchPhase,
            k * s * (p.eta_d1 * (1.0 - p.eta_h1)).sqrt(),
        ),
        (NoiseMode::DetectorVacuum1, detector),
        (NoiseMode::DetectorVacuum2, detector),
    ];
    QuadratureExpansion::from_terms(p.frequency, terms)
        .expect("validated parameters give finite coefficients")
}

/// Output spectrum at LO angle `phi` from the second moments of
/// [`output_expansion`], with uncorrelated input quadratures.
pub fn spectrum_coefficient(p: &NetworkParams, phi: f64) -> f64 {
    variance_of(&output_expansion(p, phi), &p.source_variances()).expect("all modes have variances")
}

/// Output spectrum in the closed form quoted alongside the LO sweep fit.
///
/// The input-beam term carries the prefactor
/// `sqrt(V^2 / (sin^2 a + V^2 cos^2 a))` with
/// `tan a = (1 + K sqrt(eta_h eta_d (1 - eps)) / sqrt(eps)) tan phi`.
/// This agrees with [`spectrum_coefficient`] on the quadrature axes and
/// everywhere when `V = 1`; between the axes it differs for `V != 1`.
///
/// `sin^2 a` and `cos^2 a` are computed from `sin phi` and `cos phi`
/// directly so the axis `phi = pi/2` needs no special case. For complex `K`
/// the modulus of the bracket is used.
pub fn spectrum_paper(p: &NetworkParams, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let eps = p.epsilon;
    let v = p.v_phase_in;

    // |1 + K sqrt(eta (1-eps)) / sqrt(eps)|^2
    let slope2 = p.signal_amplitude().norm_sqr() / eps;
    let denom = slope2 * s2 + c2;
    let prefactor = if denom > 0.0 {
        let sin2a = slope2 * s2 / denom;
        let cos2a = c2 / denom;
        (v * v / (sin2a + v * v * cos2a)).sqrt()
    } else {
        // Only reachable with a vanishing bracket on the phase axis, where the
        // bracket multiplies zero anyway.
        1.0
    };

    prefactor * (eps * c2 + p.signal_power_gain() * s2)
        + p.tap_residual().norm_sqr() * s2
        + (1.0 - eps) * c2
        + p.gain.norm_sqr() * (1.0 - p.eta_loop()) * s2
}

/// Phase-quadrature output spectrum (`phi = pi/2`) as three explicit terms.
pub fn phase_variance(p: &NetworkParams) -> f64 {
    p.signal_power_gain() * p.v_phase_in
        + p.tap_residual().norm_sqr()
        + p.gain.norm_sqr() * (1.0 - p.eta_loop())
}

/// Gain that cancels the tap vacuum with perfect in-loop detection,
/// `sqrt((1 - eps) / eps)`.
pub fn ideal_gain(epsilon: f64) -> Result<f64> {
    check_range("epsilon", epsilon, 0.0, 1.0)?;
    Ok(((1.0 - epsilon) / epsilon).sqrt())
}

/// Gain maximizing the signal transfer ratio,
/// `sqrt(eta_h eta_d (1 - eps) / eps)`.
pub fn optimal_gain(epsilon: f64, eta_h: f64, eta_d: f64) -> Result<f64> {
    check_range("epsilon", epsilon, 0.0, 1.0)?;
    check_range("eta_h", eta_h, 0.0, 1.0)?;
    check_range("eta_d", eta_d, 0.0, 1.0)?;
    Ok((eta_h * eta_d * (1.0 - epsilon) / epsilon).sqrt())
}

/// Output SNR over input SNR for a phase signal of power `signal_in`
/// (QNL units) riding on a QNL input.
pub fn transfer_ratio(p: &NetworkParams, signal_in: f64) -> f64 {
    let noise_out = phase_variance(&p.with_v_phase_in(1.0).expect("QNL input is valid"));
    let snr_out = p.signal_power_gain() * signal_in / noise_out;
    let snr_in = signal_in / 1.0;
    snr_out / snr_in
}

/// Transfer ratio at [`optimal_gain`]: `eps (1 - eta_h eta_d) + eta_h eta_d`.
pub fn max_transfer_ratio(epsilon: f64, eta_h: f64, eta_d: f64) -> f64 {
    let eta = eta_h * eta_d;
    epsilon * (1.0 - eta) + eta
}

/// Best transfer ratio of a phase-insensitive amplifier with power gain `g`
/// acting on a QNL-limited signal: `g / (2g - 1)`, tending to 1/2 (3 dB).
pub fn pia_transfer_ratio(power_gain: f64) -> Result<f64> {
    if !(power_gain.is_finite() && power_gain >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "power gain",
            value: power_gain,
            reason: "phase-insensitive amplifier gain must be at least 1",
        });
    }
    Ok(power_gain / (2.0 * power_gain - 1.0))
}

/// Gains and transfer ratios of a network at a glance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainSummary {
    pub epsilon: f64,
    pub eta_loop: f64,
    pub ideal_gain: f64,
    pub optimal_gain: f64,
    pub max_transfer_ratio: f64,
    /// Gain magnitude of the configured network.
    pub gain: f64,
    pub transfer_ratio: f64,
    pub signal_gain: f64,
    pub signal_gain_db: f64,
    /// Phase-insensitive amplifier bound at the same signal gain.
    pub pia_transfer_ratio: f64,
}

pub fn gain_summary(p: &NetworkParams) -> Result<GainSummary> {
    let signal_gain = p.signal_power_gain();
    Ok(GainSummary {
        epsilon: p.epsilon,
        eta_loop: p.eta_loop(),
        ideal_gain: ideal_gain(p.epsilon)?,
        optimal_gain: optimal_gain(p.epsilon, p.eta_h1, p.eta_d1)?,
        max_transfer_ratio: max_transfer_ratio(p.epsilon, p.eta_h1, p.eta_d1),
        gain: p.gain.norm(),
        transfer_ratio: transfer_ratio(p, 1.0),
        signal_gain,
        signal_gain_db: crate::algebra::db_from_linear(signal_gain)?,
        pia_transfer_ratio: pia_transfer_ratio(signal_gain.max(1.0))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    use NoiseMode::*;

    fn paper_params(k: f64, v: f64) -> NetworkParams {
        NetworkParams::builder()
            .epsilon(0.2)
            .eta_h1(0.94)
            .eta_d1(0.91)
            .gain(k)
            .v_phase_in(v)
            .build()
            .unwrap()
    }

    // Coefficients computed term by term by hand with eps = 0.2,
    // eta_h = 0.94, eta_d = 0.91, K = 3.2:
    //   input phase   sqrt(.2) + 3.2 sqrt(.8554 * .8)  = 3.094370
    //   tap phase     3.2 sqrt(.8554 * .2) - sqrt(.8)   = 0.429151
    //   mismatch      3.2 sqrt(.91 * .06)              = 0.747733
    //   detector      3.2 * .3 / sqrt(2)               = 0.678823
    #[test]
    fn expansion_at_experiment_parameters() {
        let e = output_expansion(&paper_params(3.2, 1.0), FRAC_PI_2);
        let close = |m, want: f64| (e.coefficient(m).re - want).abs() < 5e-6;
        assert!(close(InputPhase, 3.094370));
        assert!(close(TapVacuumPhase, 0.429151));
        assert!(close(HomodyneMismatchPhase, 0.747733));
        assert!(close(DetectorVacuum1, 0.678823));
        assert!(close(DetectorVacuum2, 0.678823));
        assert!(e.coefficient(InputAmplitude).norm() < 1e-15);
    }

    #[test]
    fn identity_channel() {
        let p = NetworkParams::builder().build().unwrap();
        for phi in [0.0, 0.3, 1.2, 2.5] {
            let e = output_expansion(&p, phi);
            assert_eq!(e.coefficient(InputAmplitude).re, phi.cos());
            assert_eq!(e.coefficient(InputPhase).re, phi.sin());
            assert!(!e.contains(TapVacuumAmplitude));
            assert!(!e.contains(DetectorVacuum1));
        }
    }

    #[test]
    fn cancellation_gain_removes_tap_vacuum() {
        let p = NetworkParams::builder()
            .epsilon(0.2)
            .gain(2.0)
            .build()
            .unwrap();
        let e = output_expansion(&p, FRAC_PI_2);
        assert!((e.coefficient(InputPhase).re - 5f64.sqrt()).abs() < 1e-12);
        assert!(e.coefficient(TapVacuumPhase).norm() < 1e-15);
        assert!((spectrum_coefficient(&p, FRAC_PI_2) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_examples() {
        for eps in [0.1, 0.5, 0.9] {
            let p = NetworkParams::builder().epsilon(eps).build().unwrap();
            for phi in [0.0, 0.7, FRAC_PI_2] {
                assert!((spectrum_coefficient(&p, phi) - 1.0).abs() < 1e-12);
            }
        }
        // 9.575125 + 0.184171 + 1.480704
        let p = paper_params(3.2, 1.0);
        assert!((spectrum_coefficient(&p, FRAC_PI_2) - 11.24).abs() < 1e-9);
        assert!((phase_variance(&p) - 11.24).abs() < 1e-9);
    }

    #[test]
    fn paper_form_on_axes() {
        let p = paper_params(3.2, 10f64.powf(0.86));
        assert!((spectrum_paper(&p, 0.0) - 1.0).abs() < 1e-12);
        // 9.575125 * 7.244360 + 0.184171 + 1.480704
        assert!((spectrum_paper(&p, FRAC_PI_2) - 71.030526).abs() < 1e-5);
        for phi in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
            let a = spectrum_paper(&p, phi);
            let b = spectrum_coefficient(&p, phi);
            assert!((a - b).abs() < 1e-12 * b.max(1.0), "phi={phi}: {a} vs {b}");
        }
        let ideal = NetworkParams::builder()
            .epsilon(0.2)
            .gain(2.0)
            .build()
            .unwrap();
        assert!((spectrum_paper(&ideal, FRAC_PI_2) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn paper_form_diverges_between_axes() {
        let p = paper_params(3.2, 7.244);
        let a = spectrum_paper(&p, FRAC_PI_4);
        let b = spectrum_coefficient(&p, FRAC_PI_4);
        assert!((a - b).abs() > 1e-3);
        let p1 = paper_params(3.2, 1.0);
        let a = spectrum_paper(&p1, FRAC_PI_4);
        let b = spectrum_coefficient(&p1, FRAC_PI_4);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn gains() {
        assert_eq!(ideal_gain(0.5).unwrap(), 1.0);
        assert_eq!(ideal_gain(1.0).unwrap(), 0.0);
        assert!((ideal_gain(0.2).unwrap() - 2.0).abs() < 1e-15);
        assert!(ideal_gain(0.0).is_err());
        assert!((optimal_gain(0.2, 1.0, 1.0).unwrap() - ideal_gain(0.2).unwrap()).abs() < 1e-15);
        assert!((optimal_gain(0.2, 0.94, 0.91).unwrap() - 1.849757).abs() < 1e-6);
        assert!((optimal_gain(0.5, 0.5, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(optimal_gain(0.0, 0.9, 0.9).is_err());
    }

    #[test]
    fn transfer_examples() {
        let ideal = NetworkParams::builder()
            .epsilon(0.3)
            .gain(ideal_gain(0.3).unwrap())
            .build()
            .unwrap();
        for s in [0.1, 1.0, 42.0] {
            assert!((transfer_ratio(&ideal, s) - 1.0).abs() < 1e-12);
        }
        let passive = NetworkParams::builder()
            .epsilon(0.3)
            .eta_h1(0.8)
            .build()
            .unwrap();
        assert!((transfer_ratio(&passive, 1.0) - 0.3).abs() < 1e-12);

        let k = optimal_gain(0.2, 0.94, 0.91).unwrap();
        let t = transfer_ratio(&paper_params(k, 1.0), 5.0);
        assert!((t - 0.88432).abs() < 1e-5);
        assert!((max_transfer_ratio(0.2, 0.94, 0.91) - 0.88432).abs() < 1e-12);
        assert_eq!(max_transfer_ratio(1.0, 0.3, 0.4), 1.0);
        assert_eq!(max_transfer_ratio(0.4, 1.0, 1.0), 1.0);
    }

    #[test]
    fn pia_limits() {
        assert_eq!(pia_transfer_ratio(1.0).unwrap(), 1.0);
        assert!((pia_transfer_ratio(10.0).unwrap() - 10.0 / 19.0).abs() < 1e-15);
        assert!((pia_transfer_ratio(1e9).unwrap() - 0.5).abs() < 1e-9);
        assert!(pia_transfer_ratio(0.5).is_err());
    }

    #[test]
    fn summary_of_experiment() {
        let s = gain_summary(&NetworkParams::experiment()).unwrap();
        assert!((s.signal_gain - 9.575125).abs() < 1e-6);
        assert!((s.signal_gain_db - 9.811445).abs() < 1e-6);
        assert!((s.max_transfer_ratio - 0.88432).abs() < 1e-12);
        assert!(s.transfer_ratio < s.max_transfer_ratio);
    }

    #[test]
    fn builder_rejects_invalid() {
        assert!(NetworkParams::builder().epsilon(0.0).build().is_err());
        assert!(NetworkParams::builder().epsilon(1.1).build().is_err());
        assert!(NetworkParams::builder().eta_h1(0.0).build().is_err());
        assert!(NetworkParams::builder().eta_det2(1.01).build().is_err());
        assert!(NetworkParams::builder().v_phase_in(0.9).build().is_err());
        assert!(NetworkParams::builder().gain(f64::NAN).build().is_err());
    }

    #[test]
    fn json_gain_forms() {
        let p: NetworkParams =
            serde_json::from_str(r#"{"epsilon":0.2,"eta_h1":0.94,"eta_d1":0.91,"gain":[1.0,2.0]}"#)
                .unwrap();
        assert_eq!(p.gain(), Complex64::new(1.0, 2.0));
        assert_eq!(p.v_phase_in(), 1.0);
        let back: NetworkParams =
            serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let bad = serde_json::from_str::<NetworkParams>(r#"{"epsilon":0,"eta_h1":1,"eta_d1":1}"#);
        assert!(bad.is_err());
    }
}
