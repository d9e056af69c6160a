use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::NetworkParams;

/// Impulse response of the feed-forward electronics. The overall gain is
/// the real part of the network's `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Kernel {
    /// `K` times a pure delay of `delay_samples`.
    Flat {
        #[serde(default)]
        delay_samples: usize,
    },
    /// Two-pole resonator with unit peak response at `center` Hz and
    /// -3 dB width `bandwidth` Hz, scaled by `K`.
    Bandpass { center: f64, bandwidth: f64 },
}

impl Default for Kernel {
    fn default() -> Self {
        Kernel::Flat { delay_samples: 0 }
    }
}

impl Kernel {
    pub(crate) fn validate(&self, params: &NetworkParams, sample_rate: f64) -> Result<()> {
        if params.gain().im != 0.0 {
            return Err(Error::InvalidParameter {
                name: "gain (imaginary part)",
                value: params.gain().im,
                reason: "time-domain kernels need a real gain",
            });
        }
        if let Kernel::Bandpass { center, bandwidth } = *self {
            if !(center > 0.0 && center < sample_rate / 2.0) {
                return Err(Error::InvalidParameter {
                    name: "bandpass center",
                    value: center,
                    reason: "must lie strictly between 0 and the Nyquist frequency",
                });
            }
            if !(bandwidth > 0.0 && bandwidth.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "bandpass bandwidth",
                    value: bandwidth,
                    reason: "must be positive",
                });
            }
        }
        Ok(())
    }

    /// Biquad coefficients `(b0, b2, a1, a2)` normalized by `a0`; `b1 = 0`.
    fn biquad(center: f64, bandwidth: f64, sample_rate: f64) -> (f64, f64, f64, f64) {
        let w0 = TAU * center / sample_rate;
        let q = center / bandwidth;
        let alpha = w0.sin() / (2.0 * q);
        let a0 = 1.0 + alpha;
        (
            alpha / a0,
            -alpha / a0,
            -2.0 * w0.cos() / a0,
            (1.0 - alpha) / a0,
        )
    }

    /// Causal convolution of `input` with the kernel scaled by `gain`.
    pub fn apply(&self, gain: f64, sample_rate: f64, input: &[f64]) -> Vec<f64> {
        match *self {
            Kernel::Flat { delay_samples } => {
                let mut out = vec![0.0; input.len()];
                if delay_samples < input.len() {
                    for (o, x) in out[delay_samples..].iter_mut().zip(input) {
                        *o = gain * x;
                    }
                }
                out
            }
            Kernel::Bandpass { center, bandwidth } => {
                let (b0, b2, a1, a2) = Self::biquad(center, bandwidth, sample_rate);
                let (mut x1, mut x2, mut y1, mut y2) = (0.0, 0.0, 0.0, 0.0);
                input
                    .iter()
                    .map(|&x| {
                        let y = b0 * x + b2 * x2 - a1 * y1 - a2 * y2;
                        x2 = x1;
                        x1 = x;
                        y2 = y1;
                        y1 = y;
                        gain * y
                    })
                    .collect()
            }
        }
    }

    /// Frequency response at `frequency` Hz, i.e. the effective complex
    /// `K(omega)` seen by the analytic model.
    pub fn response(&self, gain: f64, frequency: f64, sample_rate: f64) -> Complex64 {
        let w = TAU * frequency / sample_rate;
        match *self {
            Kernel::Flat { delay_samples } => {
                gain * Complex64::from_polar(1.0, -w * delay_samples as f64)
            }
            Kernel::Bandpass { center, bandwidth } => {
                let (b0, b2, a1, a2) = Self::biquad(center, bandwidth, sample_rate);
                let z1 = Complex64::from_polar(1.0, -w);
                let z2 = z1 * z1;
                gain * (b0 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delay_is_causal_and_shift_equivariant() {
        let k = Kernel::Flat { delay_samples: 5 };
        let mut impulse = vec![0.0; 32];
        impulse[10] = 1.0;
        let out = k.apply(2.5, 1.0, &impulse);
        for (i, y) in out.iter().enumerate() {
            assert_eq!(*y, if i == 15 { 2.5 } else { 0.0 });
        }
        let mut shifted = vec![0.0; 32];
        shifted[13] = 1.0;
        let out2 = k.apply(2.5, 1.0, &shifted);
        assert_eq!(&out[..29], &out2[3..]);
    }

    #[test]
    fn bandpass_is_causal() {
        let k = Kernel::Bandpass {
            center: 10.0,
            bandwidth: 2.0,
        };
        let mut x = vec![0.0; 64];
        x[20] = 1.0;
        let y = k.apply(1.0, 100.0, &x);
        assert!(y[..20].iter().all(|v| *v == 0.0));
        assert!(y[20] != 0.0);
        let mut x2 = vec![0.0; 64];
        x2[30] = 1.0;
        let y2 = k.apply(1.0, 100.0, &x2);
        for i in 0..34 {
            assert!((y[i] - y2[i + 10]).abs() < 1e-15);
        }
    }

    #[test]
    fn bandpass_response_peaks_at_center() {
        let k = Kernel::Bandpass {
            center: 25e6,
            bandwidth: 2e6,
        };
        let peak = k.response(3.0, 25e6, 100e6);
        assert!((peak.norm() - 3.0).abs() < 1e-12);
        assert!(k.response(3.0, 5e6, 100e6).norm() < 0.5);
    }

    #[test]
    fn bandpass_response_matches_filtered_tone() {
        // Drive with a long cosine and compare the steady-state amplitude.
        let k = Kernel::Bandpass {
            center: 20.0,
            bandwidth: 4.0,
        };
        let (fs, f) = (100.0, 17.0);
        let n = 20_000;
        let x: Vec<f64> = (0..n).map(|i| (TAU * f * i as f64 / fs).cos()).collect();
        let y = k.apply(1.0, fs, &x);
        let tail = &y[n - 1000..];
        let amp = tail.iter().cloned().fold(0.0, f64::max);
        let h = k.response(1.0, f, fs).norm();
        assert!((amp - h).abs() < 2e-3 * h, "{amp} vs {h}");
    }

    #[test]
    fn flat_response_is_delay_phase() {
        let k = Kernel::Flat { delay_samples: 3 };
        let h = k.response(2.0, 10.0, 100.0);
        assert!((h.norm() - 2.0).abs() < 1e-12);
        assert!((h.arg() + TAU * 0.3).abs() < 1e-12 || (h.arg() + TAU * 0.3 - TAU).abs() < 1e-12);
    }
}
