//! From measured dB levels to inferred SNRs, then the model run forward to
//! predict the same levels.

use std::f64::consts::FRAC_PI_2;

use ffamp::detection::{detected_variance, report_snr, SnrLevels};
use ffamp::network::spectrum_coefficient;
use ffamp::{db_from_linear, NetworkParams};

fn main() -> ffamp::Result<()> {
    let levels = SnrLevels::experiment();
    let r = report_snr(&levels)?;
    println!(
        "input  SNR detected {:.3}, inferred {:.3}",
        r.snr_detected_in, r.snr_inferred_in
    );
    println!(
        "output SNR detected {:.3}, inferred {:.3}",
        r.snr_detected_out, r.snr_inferred_out
    );
    println!("T_s = {:.4}", r.t_s);

    let p = NetworkParams::experiment();
    let eta = p.eta_det2();
    let signal = detected_variance(spectrum_coefficient(&p, FRAC_PI_2), eta);
    let floor = detected_variance(
        spectrum_coefficient(&p.with_v_phase_in(1.0)?, FRAC_PI_2),
        eta,
    );
    println!(
        "\npredicted signal {:.2} dB (measured {})",
        db_from_linear(signal)?,
        levels.output.total_db
    );
    println!(
        "predicted floor  {:.2} dB (measured {})",
        db_from_linear(floor)?,
        levels.output.noise_db
    );
    println!(
        "signal gain {:.3} = {:.2} dB",
        p.signal_power_gain(),
        db_from_linear(p.signal_power_gain())?
    );
    Ok(())
}
