//! JSON run configuration.
//!
//! Every block is optional; missing blocks fall back to the experimental
//! configuration. Efficiencies are fractions, never percent.
//!
//! ```json
//! {
//!   "network": { "epsilon": 0.2, "eta_h1": 0.94, "eta_d1": 0.91,
//!                "gain": 3.2, "v_phase_in": 7.2444, "eta_det2": 0.8008 },
//!   "sweep": { "points": 361, "formula": "paper", "detected": true },
//!   "simulation": { "sample_rate": 1e8, "duration": 0.00262144,
//!                   "kernel": { "type": "flat" }, "seed": 1,
//!                   "phases": [0.0, 0.785398, 1.570796] },
//!   "snr": { "input":  { "total_db": 8.0,  "noise_db": 0.0, "eta": 0.8554 },
//!            "output": { "total_db": 17.6, "noise_db": 9.5, "eta": 0.8008 } }
//! }
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::detection::SnrLevels;
use crate::error::Result;
use crate::fit::FitDomain;
use crate::montecarlo::{Kernel, SimConfig, DEFAULT_SEGMENTS};
use crate::network::{experiment, NetworkParams};
use crate::sweep::{Formula, DEFAULT_POINTS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSettings {
    pub points: usize,
    pub formula: Formula,
    pub detected: bool,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            points: DEFAULT_POINTS,
            formula: Formula::Paper,
            detected: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSettings {
    pub signal_frequency: f64,
    pub signal_amplitude: f64,
    pub sample_rate: f64,
    pub duration: f64,
    pub kernel: Kernel,
    pub seed: u64,
    pub segment_count: usize,
    /// LO angles compared by the oracle.
    pub phases: Vec<f64>,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        let sample_rate = 100.0e6;
        SimulationSettings {
            signal_frequency: experiment::SIGNAL_FREQUENCY,
            signal_amplitude: 0.0,
            sample_rate,
            duration: (DEFAULT_SEGMENTS * 4096) as f64 / sample_rate,
            kernel: Kernel::default(),
            seed: 0,
            segment_count: DEFAULT_SEGMENTS,
            phases: vec![0.0, FRAC_PI_4, FRAC_PI_2],
        }
    }
}

impl SimulationSettings {
    pub fn to_sim_config(&self, params: NetworkParams) -> SimConfig {
        SimConfig {
            params,
            signal_frequency: self.signal_frequency,
            signal_amplitude: self.signal_amplitude,
            sample_rate: self.sample_rate,
            duration: self.duration,
            kernel: self.kernel,
            seed: self.seed,
            segment_count: self.segment_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitSettings {
    pub domain: FitDomain,
}

impl Default for FitSettings {
    fn default() -> Self {
        FitSettings {
            domain: FitDomain::Linear,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub network: NetworkParams,
    pub sweep: SweepSettings,
    pub simulation: SimulationSettings,
    pub snr: SnrLevels,
    pub fit: FitSettings,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            network: NetworkParams::experiment(),
            sweep: SweepSettings::default(),
            simulation: SimulationSettings::default(),
            snr: SnrLevels::experiment(),
            fit: FitSettings::default(),
        }
    }
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Config> {
        crate::io::read_json(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_document_uses_defaults() {
        let c: Config = serde_json::from_str(
            r#"{"network":{"epsilon":0.5,"eta_h1":1,"eta_d1":1,"gain":1},"sweep":{"points":9}}"#,
        )
        .unwrap();
        assert_eq!(c.network.epsilon(), 0.5);
        assert_eq!(c.sweep.points, 9);
        assert_eq!(c.sweep.formula, Formula::Paper);
        assert_eq!(c.snr, SnrLevels::experiment());
    }

    #[test]
    fn invalid_network_rejected() {
        let r = serde_json::from_str::<Config>(
            r#"{"network":{"epsilon":0.2,"eta_h1":94,"eta_d1":0.91}}"#,
        );
        assert!(r.is_err());
        let r = serde_json::from_str::<Config>(r#"{"netwrok":{}}"#);
        assert!(r.is_err());
    }

    #[test]
    fn default_simulation_is_valid() {
        let c = Config::default();
        let sim = c.simulation.to_sim_config(c.network);
        sim.validate().unwrap();
        assert_eq!(sim.sample_count(), 64 * 4096);
    }

    #[test]
    fn kernel_json() {
        let s: SimulationSettings = serde_json::from_str(
            r#"{"kernel":{"type":"bandpass","center":2.5e7,"bandwidth":1e6}}"#,
        )
        .unwrap();
        assert_eq!(
            s.kernel,
            Kernel::Bandpass {
                center: 2.5e7,
                bandwidth: 1e6
            }
        );
    }
}
