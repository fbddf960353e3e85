//! Sweeps the MF-AOA schedule scale τ on n = 100 (T = 1000) and prints the
//! mean swap ratio for each grid value. The target at n = 100 is 0.3089.
//!
//! cargo run --release -p bpsp-core --example calibrate_tau [count] [seed]

use bpsp_core::mfaoa::{MfConfig, StepRule};
use bpsp_core::{monte_carlo, EnsembleSpec, RunOptions, Solver};

fn main() {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    println!("tau,mean_ratio,std_ratio");
    for tau in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let solver = Solver::MfAoa(MfConfig {
            tau,
            steps: StepRule::Fixed(1000),
            ..MfConfig::default()
        });
        let spec = EnsembleSpec { n: 100, count, seed };
        let e = monte_carlo(&solver, spec, RunOptions::default()).expect("ensemble runs");
        println!(
            "{tau},{:.4},{:.4}",
            e.stats.mean_ratio,
            e.stats.std_ratio.unwrap_or(f64::NAN)
        );
    }
}
