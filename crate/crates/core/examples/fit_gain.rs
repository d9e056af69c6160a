//! Recovers the electronic gain from a noisy LO sweep.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use ffamp::fit::{fit_gain, FitDomain, FitOptions};
use ffamp::sweep::{run_sweep, Formula, SweepTrace};
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    let p = NetworkParams::experiment();
    let truth = run_sweep(&p, 361, Formula::Paper, true)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let noise = Normal::new(0.0, 0.03).unwrap();
    let noisy = truth
        .variance_linear
        .iter()
        .map(|v| v * (1.0 + noise.sample(&mut rng)))
        .collect();
    let trace = SweepTrace::from_linear(truth.phase.clone(), noisy, true)?;

    for domain in [FitDomain::Linear, FitDomain::Db] {
        let opts = FitOptions {
            formula: Formula::Paper,
            domain,
        };
        let r = fit_gain(&trace, &p, opts)?;
        println!(
            "{domain:?}: K = {:.4} (true {}), rms {:.4}, {} evaluations",
            r.k_fit,
            p.gain().re,
            r.residual_rms,
            r.iterations
        );
    }
    Ok(())
}
