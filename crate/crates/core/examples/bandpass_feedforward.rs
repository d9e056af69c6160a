//! A band-limited feed-forward: the noise budget only holds near the
//! kernel's passband.

use std::f64::consts::FRAC_PI_2;

use ffamp::montecarlo::{estimate_psd, simulate_streams, Kernel, SimConfig};
use ffamp::network::spectrum_coefficient;
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    let p = NetworkParams::experiment().with_v_phase_in(1.0)?;
    let mut c = SimConfig::new(p, 64, 1024, 3);
    c.kernel = Kernel::Bandpass {
        center: 25e6,
        bandwidth: 5e6,
    };
    let s = simulate_streams(&c)?;
    let psd = estimate_psd(&s.phase, c.sample_rate, c.segment_count)?;

    println!("{:>8} {:>10} {:>10}", "MHz", "simulated", "model");
    for f_mhz in [2.0, 10.0, 18.0, 22.0, 25.0, 28.0, 32.0, 40.0, 48.0] {
        let k = psd.bin_of(f_mhz * 1e6, c.sample_rate);
        let bins: Vec<usize> = (k - 4..=k + 4).collect();
        let (m, _) = psd.band_mean(&bins);
        let h = c.kernel.response(p.gain().re, f_mhz * 1e6, c.sample_rate);
        println!(
            "{f_mhz:>8.1} {m:>10.3} {:>10.3}",
            spectrum_coefficient(&p.with_gain(h), FRAC_PI_2)
        );
    }
    Ok(())
}
