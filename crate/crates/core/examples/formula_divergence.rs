//! The closed-form spectrum and the direct second-moment sum agree on the
//! quadrature axes but part ways in between once the input carries excess
//! phase noise.

use ffamp::sweep::divergence_table;
use ffamp::NetworkParams;

fn main() -> ffamp::Result<()> {
    for v in [1.0, 7.244, 30.0] {
        let p = NetworkParams::experiment().with_v_phase_in(v)?;
        let table = divergence_table(&p, 9)?;
        println!("V = {v}");
        for r in &table[..5] {
            println!(
                "  {:>6.4} {:>10.4} {:>10.4} {:>+8.2}%",
                r.phase_rad,
                r.paper,
                r.coefficient,
                100.0 * r.relative
            );
        }
    }
    Ok(())
}
