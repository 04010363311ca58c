//! Sweeps dimensions 2..=18, fits the space, time and cost families, and
//! extrapolates to n = 186 and 400 beside the published coefficients.
//!
//! `cargo run --release --example fit_extrapolate`

use grover_svp::estimate::{extrapolate, fit_sweep, sweep, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = SweepConfig::new((2..=18).collect());
    cfg.grover = false;
    let fits = fit_sweep(&sweep(&cfg)?)?;
    for f in &fits {
        println!(
            "{:<13} R^2 {:.6}  rank {:>2}  max rel err {:.2e}",
            f.metric.name(),
            f.model.r_squared,
            f.model.effective_rank,
            f.model.max_relative_error
        );
    }
    for n in [186, 400] {
        let e = extrapolate(&fits, n)?;
        println!("\nn = {n}, k = {}", e.k.scientific);
        for p in &e.refit {
            println!(
                "  ours {:<13} oracle {}",
                p.metric.name(),
                p.oracle.scientific
            );
        }
        for c in &e.published_coefficients {
            let ratios: Vec<String> = c
                .ratio_to_published
                .iter()
                .map(|(m, r)| format!("{} {}", m.name(), r.scientific))
                .collect();
            println!(
                "  published coefficients, {:?} logs: ratio to published {}",
                c.log_base,
                ratios.join(", ")
            );
        }
    }
    Ok(())
}
