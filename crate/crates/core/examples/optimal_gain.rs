//! Transfer ratio against electronic gain for the experimental efficiencies,
//! and how the optimum compares with a phase-insensitive amplifier.

use ffamp::network::{gain_summary, pia_transfer_ratio, transfer_ratio};
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    let p = NetworkParams::experiment();
    let s = gain_summary(&p)?;
    println!("ideal K   = {:.4}", s.ideal_gain);
    println!("optimal K = {:.4}", s.optimal_gain);
    println!("max T_s   = {:.4}", s.max_transfer_ratio);
    println!("T_s at K={} is {:.4}", s.gain, s.transfer_ratio);

    println!("\n{:>6} {:>8} {:>8} {:>8}", "K", "T_s", "G", "T_pia");
    for i in 0..=16 {
        let k = 0.25 * i as f64;
        let q = p.with_gain(k);
        let g = q.signal_power_gain();
        // A PIA only makes sense as an amplifier.
        let pia = if g >= 1.0 {
            format!("{:.4}", pia_transfer_ratio(g)?)
        } else {
            "-".into()
        };
        println!(
            "{k:>6.2} {:>8.4} {g:>8.3} {pia:>8}",
            transfer_ratio(&q, 1.0)
        );
    }
    Ok(())
}
