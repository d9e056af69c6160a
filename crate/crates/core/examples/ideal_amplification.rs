//! Lossless feed-forward: the output phase variance is the input variance
//! divided by the tap fraction, at every tap setting.

use ffamp::network::{ideal_gain, phase_variance};
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    let v_in = 3.0;
    println!("{:>6} {:>8} {:>10} {:>10}", "eps", "K", "V_out", "V_in/eps");
    for i in 1..=9 {
        let eps = i as f64 / 10.0;
        let k = ideal_gain(eps)?;
        let p = NetworkParams::builder()
            .epsilon(eps)
            .gain(k)
            .v_phase_in(v_in)
            .build()?;
        println!(
            "{eps:>6.1} {k:>8.4} {:>10.4} {:>10.4}",
            phase_variance(&p),
            v_in / eps
        );
    }
    Ok(())
}
