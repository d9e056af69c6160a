use serde::{Deserialize, Serialize};

use super::{estimate_psd, simulate_streams, Kernel, SimConfig};
use crate::error::{Error, Result};
use crate::network::{spectrum_coefficient, spectrum_paper};

/// Agreement threshold in combined standard errors.
pub const Z_THRESHOLD: f64 = 3.0;

/// Bins on either side of the signal bin left out of the comparison band.
const SIGNAL_GUARD: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub phi: f64,
    pub monte_carlo: f64,
    pub standard_error: f64,
    /// Band mean of [`spectrum_coefficient`].
    pub analytic: f64,
    /// Band mean of [`spectrum_paper`], for reference.
    pub paper: f64,
    pub z_score: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub rows: Vec<OracleRow>,
    pub segments: usize,
    pub segment_len: usize,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Simulates `c` once and compares the band-averaged output spectrum at
/// each LO angle against the analytic second-moment model.
///
/// The band is every bin except DC, Nyquist and, when a signal is present,
/// the bins around the signal. With a delayed flat kernel each bin is
/// compared against the model evaluated at the complex gain
/// `K exp(-i omega d)` for that bin.
pub fn oracle_compare(c: &SimConfig, phis: &[f64]) -> Result<OracleReport> {
    if let Kernel::Bandpass { .. } = c.kernel {
        return Err(Error::UnsupportedKernel(
            "the bandpass kernel has no flat-gain analytic counterpart",
        ));
    }
    let streams = simulate_streams(c)?;
    let k = c.params.gain().re;

    let mut rows = Vec::with_capacity(phis.len());
    let mut shape = (0, 0);
    for &phi in phis {
        let psd = estimate_psd(&streams.quadrature(phi), c.sample_rate, c.segment_count)?;
        shape = (psd.segment_count(), psd.segment_len);
        let mut bins = psd.interior_bins();
        if c.signal_amplitude != 0.0 {
            let sb = psd.bin_of(c.signal_frequency, c.sample_rate);
            bins.retain(|b| b.abs_diff(sb) > SIGNAL_GUARD);
        }
        let (mc, se) = psd.band_mean(&bins);

        let (mut analytic, mut paper) = (0.0, 0.0);
        for &b in &bins {
            let gain = c.kernel.response(k, psd.frequencies[b], c.sample_rate);
            let p = c.params.with_gain(gain);
            analytic += spectrum_coefficient(&p, phi);
            paper += spectrum_paper(&p, phi);
        }
        analytic /= bins.len() as f64;
        paper /= bins.len() as f64;

        let z = if se > 0.0 { (mc - analytic) / se } else { 0.0 };
        rows.push(OracleRow {
            phi,
            monte_carlo: mc,
            standard_error: se,
            analytic,
            paper,
            z_score: z,
            pass: z.abs() <= Z_THRESHOLD,
        });
    }
    Ok(OracleReport {
        rows,
        segments: shape.0,
        segment_len: shape.1,
    })
}
