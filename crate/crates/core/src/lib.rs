//! Noise budgets for electro-optic phase feed-forward amplification.
//!
//! Part of a beam carrying a phase signal is tapped off and measured on a
//! homodyne detector; the photocurrent drives a phase modulator on the rest
//! of the beam. With the right gain the modulator cancels the vacuum noise
//! the tap let in and the signal comes out amplified by `1 / epsilon` with
//! no added noise. This crate models that network in the linearized
//! (second-moment) picture:
//!
//! - [`algebra`]: quadrature expansions over independent noise sources.
//! - [`network`]: output spectra, cancellation and optimal gains, signal
//!   transfer ratios and the phase-insensitive amplifier bound.
//! - [`detection`]: detector loss and SNR inference from measured levels.
//! - [`sweep`] and [`fit`]: LO-phase sweeps and least-squares gain fits.
//! - [`montecarlo`]: a time-domain simulation used as an independent check
//!   of the analytic spectra.
//! - [`io`] and [`config`]: CSV/JSON output and the JSON run configuration.
//!
//! ```
//! use ffamp::network::{phase_variance, ideal_gain, NetworkParams};
//!
//! let k = ideal_gain(0.2).unwrap();
//! let p = NetworkParams::builder().epsilon(0.2).gain(k).v_phase_in(3.0).build().unwrap();
//! assert!((phase_variance(&p) - 15.0).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod config;
pub mod detection;
pub mod error;
pub mod fit;
pub mod io;
pub mod montecarlo;
pub mod network;
pub mod sweep;

pub use algebra::{
    db_from_linear, linear_from_db, NoiseMode, QuadratureExpansion, SourceVariances,
};
pub use detection::{SnrLevels, SnrReport};
pub use error::{Error, Result};
pub use network::NetworkParams;
pub use sweep::{Formula, SweepTrace};
