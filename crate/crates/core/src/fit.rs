//! Least-squares estimation of the feed-forward gain from an LO sweep.
//!
//! A coarse grid over `K >= 0` brackets the minimum of the residual sum of
//! squares; golden-section search then refines inside the bracket.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::NetworkParams;
use crate::sweep::{model_at, Formula, SweepTrace, MIN_POINTS};

/// Absolute tolerance on the fitted gain.
pub const GAIN_TOLERANCE: f64 = 1e-6;

const GRID_STEPS: usize = 400;
const INITIAL_UPPER: f64 = 10.0;
const MAX_UPPER: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub k_fit: f64,
    /// RMS residual in the fit domain.
    pub residual_rms: f64,
    /// Objective evaluations spent in the golden-section stage.
    pub iterations: usize,
}

/// Residual domain of the fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitDomain {
    /// Linear variance; spectrum-analyzer noise is multiplicative in power.
    #[default]
    Linear,
    Db,
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub formula: Formula,
    pub domain: FitDomain,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            formula: Formula::Paper,
            domain: FitDomain::Linear,
        }
    }
}

/// Minimizes a unimodal `f` on `[a, b]` to within `tol` in the argument.
/// Returns `(x_min, f(x_min), evaluations)`.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, usize)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evals = 2;
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evals += 1;
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    (x, fx, evals + 1)
}

fn check_trace(trace: &SweepTrace) -> Result<()> {
    if trace.phase.len() != trace.variance_linear.len() {
        return Err(Error::Malformed("trace arrays differ in length".into()));
    }
    if trace.len() < MIN_POINTS {
        return Err(Error::DegenerateTrace("fewer than 8 points"));
    }
    let (lo, hi) = trace
        .phase
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(*p), hi.max(*p))
        });
    if hi - lo < std::f64::consts::PI - 1e-9 {
        return Err(Error::DegenerateTrace(
            "phases span less than half a period",
        ));
    }
    let first = trace.variance_linear[0];
    if trace
        .variance_linear
        .iter()
        .all(|v| (v - first).abs() <= 1e-12 * first.abs())
    {
        return Err(Error::DegenerateTrace("all variances equal"));
    }
    if trace
        .variance_linear
        .iter()
        .any(|v| !(v.is_finite() && *v > 0.0))
    {
        return Err(Error::Malformed(
            "variances must be positive and finite".into(),
        ));
    }
    Ok(())
}

/// Fits the electronic gain `K` of `params` (its own gain is ignored) to an
/// LO sweep. The trace's `detected` flag decides whether the model includes
/// the verification detector's loss.
pub fn fit_gain(
    trace: &SweepTrace,
    params: &NetworkParams,
    options: FitOptions,
) -> Result<FitResult> {
    check_trace(trace)?;
    let target: Vec<f64> = match options.domain {
        FitDomain::Linear => trace.variance_linear.clone(),
        FitDomain::Db => trace
            .variance_linear
            .iter()
            .map(|v| 10.0 * v.log10())
            .collect(),
    };
    let sse = |k: f64| -> f64 {
        let model = model_at(
            &params.with_gain(k),
            &trace.phase,
            options.formula,
            trace.detected,
        );
        model
            .iter()
            .zip(&target)
            .map(|(m, t)| {
                let m = match options.domain {
                    FitDomain::Linear => *m,
                    FitDomain::Db => 10.0 * m.log10(),
                };
                (m - t).powi(2)
            })
            .sum()
    };

    // Widen the grid until the best point is interior.
    let mut upper = INITIAL_UPPER;
    let (lo, hi) = loop {
        let step = upper / GRID_STEPS as f64;
        let best = (0..=GRID_STEPS)
            .map(|i| (i, sse(i as f64 * step)))
            .fold(
                (0, f64::INFINITY),
                |acc, (i, s)| if s < acc.1 { (i, s) } else { acc },
            )
            .0;
        if best < GRID_STEPS || upper >= MAX_UPPER {
            let lo = best.saturating_sub(1) as f64 * step;
            let hi = ((best + 1).min(GRID_STEPS)) as f64 * step;
            break (lo, hi);
        }
        upper *= 4.0;
    };

    let (k_fit, best, iterations) = golden_section(sse, lo, hi, GAIN_TOLERANCE);
    Ok(FitResult {
        k_fit: k_fit.max(0.0),
        residual_rms: (best / trace.len() as f64).sqrt(),
        iterations,
    })
}
