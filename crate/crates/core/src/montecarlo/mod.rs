//! Time-domain stochastic simulation of the feed-forward network.
//!
//! Every noise source is a white Gaussian stream with unit variance per
//! sample, which [`estimate_psd`] maps to a flat spectrum of 1 (the QNL).
//! The in-loop photocurrent is formed sample by sample, passed through a
//! causal kernel and added to the transmitted beam's phase quadrature.
//!
//! Random numbers come from ChaCha8 with the stream id set from
//! `(trial, block)`, so blocks can be drawn in parallel and a given seed
//! always produces the same samples regardless of thread count.

mod kernel;
mod oracle;
mod psd;

use std::collections::BTreeMap;
use std::f64::consts::{SQRT_2, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use kernel::Kernel;
pub use oracle::{oracle_compare, OracleReport, OracleRow};
pub use psd::{estimate_psd, PsdEstimate, MIN_SEGMENTS, MIN_SEGMENT_LEN};

use crate::algebra::NoiseMode;
use crate::error::{Error, Result};
use crate::network::NetworkParams;

/// Samples drawn per RNG substream.
pub const BLOCK_LEN: usize = 4096;
/// Smallest simulated record.
pub const MIN_SAMPLES: usize = 1 << 14;
pub const DEFAULT_SEGMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: NetworkParams,
    /// Frequency of the classical phase signal on the input beam, Hz.
    pub signal_frequency: f64,
    /// Peak amplitude of that signal in quadrature units; zero for none.
    #[serde(default)]
    pub signal_amplitude: f64,
    pub sample_rate: f64,
    /// Record length in seconds.
    pub duration: f64,
    #[serde(default)]
    pub kernel: Kernel,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_segments")]
    pub segment_count: usize,
}

fn default_segments() -> usize {
    DEFAULT_SEGMENTS
}

impl SimConfig {
    /// A record of exactly `segments * segment_len` samples at 100 MS/s with
    /// no signal and a flat, undelayed kernel.
    pub fn new(params: NetworkParams, segments: usize, segment_len: usize, seed: u64) -> Self {
        let sample_rate = 100.0e6;
        SimConfig {
            params,
            signal_frequency: crate::network::experiment::SIGNAL_FREQUENCY,
            signal_amplitude: 0.0,
            sample_rate,
            duration: (segments * segment_len) as f64 / sample_rate,
            kernel: Kernel::default(),
            seed,
            segment_count: segments,
        }
    }

    pub fn sample_count(&self) -> usize {
        (self.duration * self.sample_rate).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sample_rate",
                value: self.sample_rate,
                reason: "must be positive",
            });
        }
        if self.sample_rate.partial_cmp(&(2.0 * self.signal_frequency))
            != Some(std::cmp::Ordering::Greater)
        {
            return Err(Error::Nyquist {
                sample_rate: self.sample_rate,
                signal_frequency: self.signal_frequency,
            });
        }
        if !self.signal_amplitude.is_finite() {
            return Err(Error::InvalidParameter {
                name: "signal_amplitude",
                value: self.signal_amplitude,
                reason: "must be finite",
            });
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(Error::InvalidParameter {
                name: "duration",
                value: self.duration,
                reason: "must be positive",
            });
        }
        let n = self.sample_count();
        if n < MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                got: n,
                needed: MIN_SAMPLES,
            });
        }
        self.kernel.validate(&self.params, self.sample_rate)?;
        Ok(())
    }
}

/// Simulated time series.
#[derive(Debug, Clone, PartialEq)]
pub struct Streams {
    pub sample_rate: f64,
    /// Output amplitude quadrature.
    pub amplitude: Vec<f64>,
    /// Output phase quadrature.
    pub phase: Vec<f64>,
    /// In-loop homodyne photocurrent (fluctuating part).
    pub photocurrent: Vec<f64>,
    /// Modulator drive, the photocurrent after the kernel.
    pub correction: Vec<f64>,
    /// Raw draws of each noise source; the input phase stream includes the
    /// excess variance and the signal.
    pub sources: BTreeMap<NoiseMode, Vec<f64>>,
}

impl Streams {
    /// Output quadrature at LO angle `phi`.
    pub fn quadrature(&self, phi: f64) -> Vec<f64> {
        let (s, c) = phi.sin_cos();
        self.amplitude
            .iter()
            .zip(&self.phase)
            .map(|(x, p)| c * x + s * p)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.phase.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phase.is_empty()
    }

    pub fn source(&self, mode: NoiseMode) -> &[f64] {
        &self.sources[&mode]
    }
}

/// Simulates trial 0 of `c`.
pub fn simulate_streams(c: &SimConfig) -> Result<Streams> {
    simulate_trial(c, 0)
}

/// Independent unit Gaussians for the seven sources, `[sample][mode]`.
fn draw_sources(seed: u64, trial: u32, n: usize) -> Vec<[f64; 7]> {
    let base = ChaCha8Rng::seed_from_u64(seed);
    let blocks = n.div_ceil(BLOCK_LEN);
    let per_block: Vec<Vec<[f64; 7]>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = base.clone();
            rng.set_stream(((trial as u64) << 32) | b as u64);
            let len = BLOCK_LEN.min(n - b * BLOCK_LEN);
            (0..len)
                .map(|_| std::array::from_fn(|_| StandardNormal.sample(&mut rng)))
                .collect()
        })
        .collect();
    per_block.into_iter().flatten().collect()
}

/// Simulates the `trial`-th independent realization of `c`.
pub fn simulate_trial(c: &SimConfig, trial: u32) -> Result<Streams> {
    c.validate()?;
    let p = &c.params;
    let n = c.sample_count();
    let draws = draw_sources(c.seed, trial, n);

    let eps = p.epsilon();
    let (eta_h, eta_d) = (p.eta_h1(), p.eta_d1());
    let v_scale = p.v_phase_in().sqrt();
    let omega = TAU * c.signal_frequency / c.sample_rate;

    let mut sources: BTreeMap<NoiseMode, Vec<f64>> = NoiseMode::ALL
        .iter()
        .map(|m| (*m, Vec::with_capacity(n)))
        .collect();
    for (i, d) in draws.iter().enumerate() {
        for (mode, x) in NoiseMode::ALL.iter().zip(d) {
            let x = match mode {
                NoiseMode::InputPhase => {
                    v_scale * x + c.signal_amplitude * (omega * i as f64).cos()
                }
                _ => *x,
            };
            sources.get_mut(mode).unwrap().push(x);
        }
    }
    drop(draws);

    let src = |m: NoiseMode| &sources[&m];
    let in_amp = src(NoiseMode::InputAmplitude);
    let in_phase = src(NoiseMode::InputPhase);
    let tap_amp = src(NoiseMode::TapVacuumAmplitude);
    let tap_phase = src(NoiseMode::TapVacuumPhase);
    let mismatch = src(NoiseMode::HomodyneMismatchPhase);
    let det1 = src(NoiseMode::DetectorVacuum1);
    let det2 = src(NoiseMode::DetectorVacuum2);

    // Homodyne locked to the phase quadrature of the reflected beam.
    let w_in = (eta_h * eta_d * (1.0 - eps)).sqrt();
    let w_tap = (eta_d * eta_h * eps).sqrt();
    let w_mm = (eta_d * (1.0 - eta_h)).sqrt();
    let w_det = (1.0 - eta_d).sqrt() / SQRT_2;
    let photocurrent: Vec<f64> = (0..n)
        .map(|i| {
            w_in * in_phase[i]
                + w_tap * tap_phase[i]
                + w_mm * mismatch[i]
                + w_det * (det1[i] + det2[i])
        })
        .collect();

    let correction = c.kernel.apply(p.gain().re, c.sample_rate, &photocurrent);

    let (t, r) = (eps.sqrt(), (1.0 - eps).sqrt());
    let amplitude = (0..n).map(|i| t * in_amp[i] - r * tap_amp[i]).collect();
    let phase = (0..n)
        .map(|i| t * in_phase[i] - r * tap_phase[i] + correction[i])
        .collect();

    Ok(Streams {
        sample_rate: c.sample_rate,
        amplitude,
        phase,
        photocurrent,
        correction,
        sources,
    })
}
