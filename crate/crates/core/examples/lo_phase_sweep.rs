//! Sweeps the verification LO through a full turn and writes the trace.
//!
//! cargo run --example lo_phase_sweep -- sweep.csv

use std::path::PathBuf;

use ffamp::io::{emit_trace, Format};
use ffamp::sweep::{run_sweep, Formula, DEFAULT_POINTS};
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| "sweep.csv".into());
    let p = NetworkParams::experiment();
    let trace = run_sweep(&p, DEFAULT_POINTS, Formula::Paper, true)?;
    emit_trace(&trace, &out, Format::Csv)?;

    let (imax, max) = trace
        .variance_db
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |a, (i, &v)| if v > a.1 { (i, v) } else { a });
    let min = trace.variance_db.iter().cloned().fold(f64::MAX, f64::min);
    println!("{} points -> {}", trace.len(), out.display());
    println!(
        "peak {max:.2} dB at {:.3} rad, minimum {min:.2} dB",
        trace.phase[imax]
    );
    Ok(())
}
