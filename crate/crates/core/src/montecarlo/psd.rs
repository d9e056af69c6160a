//! Averaged periodogram over non-overlapping segments.
//!
//! Each segment of length `N` uses a rectangular window and the bin value
//! `|X_k|^2 / N`, so unit-variance white noise has expectation 1 in every
//! bin (QNL units). A tone `a cos(2 pi k0 n / N)` centered on bin
//! `0 < k0 < N/2` contributes exactly `a^2 N / 4` to that bin.

use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_SEGMENTS: usize = 8;
pub const MIN_SEGMENT_LEN: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdEstimate {
    /// Bin frequencies `k fs / N` for `k = 0..=N/2`.
    pub frequencies: Vec<f64>,
    pub variance: Vec<f64>,
    /// Standard error of each bin mean from the scatter across segments.
    pub standard_error: Vec<f64>,
    pub segment_len: usize,
    #[serde(skip)]
    segments: Vec<Vec<f64>>,
}

fn mean_and_se(values: impl ExactSizeIterator<Item = f64> + Clone) -> (f64, f64) {
    let m = values.len() as f64;
    let mean = values.clone().sum::<f64>() / m;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

impl PsdEstimate {
    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn bin_count(&self) -> usize {
        self.variance.len()
    }

    /// Index of the bin nearest `frequency`.
    pub fn bin_of(&self, frequency: f64, sample_rate: f64) -> usize {
        let k = (frequency * self.segment_len as f64 / sample_rate).round();
        (k.max(0.0) as usize).min(self.bin_count() - 1)
    }

    /// Mean over `bins` and its standard error, computed from the scatter of
    /// per-segment band averages.
    pub fn band_mean(&self, bins: &[usize]) -> (f64, f64) {
        let per_segment = self
            .segments
            .iter()
            .map(|seg| bins.iter().map(|&k| seg[k]).sum::<f64>() / bins.len() as f64);
        mean_and_se(per_segment.collect::<Vec<_>>().into_iter())
    }

    /// All bins except DC and Nyquist.
    pub fn interior_bins(&self) -> Vec<usize> {
        (1..self.bin_count() - 1).collect()
    }
}

/// Estimates the PSD of `series` from `segment_count` non-overlapping
/// segments; trailing samples that do not fill a segment are ignored.
pub fn estimate_psd(series: &[f64], sample_rate: f64, segment_count: usize) -> Result<PsdEstimate> {
    if segment_count < MIN_SEGMENTS {
        return Err(Error::InvalidParameter {
            name: "segment_count",
            value: segment_count as f64,
            reason: "at least 8 segments are needed",
        });
    }
    let len = series.len() / segment_count;
    if len < MIN_SEGMENT_LEN {
        return Err(Error::TooFewSamples {
            got: series.len(),
            needed: segment_count * MIN_SEGMENT_LEN,
        });
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(len);
    let bins = len / 2 + 1;
    let norm = 1.0 / len as f64;
    let segments: Vec<Vec<f64>> = series
        .chunks_exact(len)
        .take(segment_count)
        .map(|chunk| {
            let mut buf: Vec<Complex<f64>> = chunk.iter().map(|x| Complex::new(*x, 0.0)).collect();
            fft.process(&mut buf);
            buf[..bins].iter().map(|z| z.norm_sqr() * norm).collect()
        })
        .collect();

    let (variance, standard_error) = (0..bins)
        .map(|k| {
            mean_and_se(
                segments
                    .iter()
                    .map(|s| s[k])
                    .collect::<Vec<_>>()
                    .into_iter(),
            )
        })
        .unzip();
    Ok(PsdEstimate {
        frequencies: (0..bins)
            .map(|k| k as f64 * sample_rate / len as f64)
            .collect(),
        variance,
        standard_error,
        segment_len: len,
        segments,
    })
}
