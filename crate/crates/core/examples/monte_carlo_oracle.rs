//! Simulates the photocurrent record and checks its spectrum against the
//! analytic model at three LO angles.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use ffamp::montecarlo::{oracle_compare, SimConfig};
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let c = SimConfig::new(NetworkParams::experiment(), 64, 4096, seed);
    let r = oracle_compare(&c, &[0.0, FRAC_PI_4, FRAC_PI_2])?;
    println!(
        "{} segments of {} samples, seed {seed}",
        r.segments, r.segment_len
    );
    println!(
        "{:>8} {:>16} {:>10} {:>10} {:>7}",
        "phi", "simulated", "analytic", "paper", "z"
    );
    for row in &r.rows {
        println!(
            "{:>8.4} {:>9.4}+-{:<5.3} {:>10.4} {:>10.4} {:>+7.2}",
            row.phi, row.monte_carlo, row.standard_error, row.analytic, row.paper, row.z_score
        );
    }
    println!("{}", if r.all_pass() { "agree" } else { "DISAGREE" });
    Ok(())
}
