//! Sweeps oracle resources over lattice dimension and prints a CSV table
//! plus two-point log-log slopes.
//!
//! `cargo run --release --example resource_sweep -- 2 5 10 20`

use grover_svp::estimate::{log_log_slope, sweep, sweep_csv, SweepConfig, TABLE_DIMS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let dims = if args.is_empty() {
        TABLE_DIMS.to_vec()
    } else {
        args
    };
    let started = std::time::Instant::now();
    let points = sweep(&SweepConfig::new(dims))?;
    print!("{}", sweep_csv(&points));
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        println!(
            "# slope {}->{}: width {:.2}, quantum cost {:.2}",
            a.n,
            b.n,
            log_log_slope(
                a.n as f64,
                a.metrics.width as f64,
                b.n as f64,
                b.metrics.width as f64
            ),
            log_log_slope(
                a.n as f64,
                a.metrics.quantum_cost as f64,
                b.n as f64,
                b.metrics.quantum_cost as f64
            ),
        );
    }
    eprintln!("# {:.1?}", started.elapsed());
    Ok(())
}
