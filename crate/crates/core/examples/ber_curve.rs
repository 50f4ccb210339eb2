//! Simulated ABER of BGCS-CIM against its union bound, written as CSV.
//!
//! ```text
//! cargo run --release --example ber_curve -- [trials] [out.csv]
//! ```

use std::path::PathBuf;

use ris_cim::harness::{emit_curve_csv, run_curve};
use ris_cim::SimConfig;

fn main() -> ris_cim::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(5_000);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "curve.csv".into()));

    let cfg = SimConfig {
        powers_dbm: vec![-10.0, 0.0, 10.0, 20.0, 30.0, 40.0],
        trials_per_point: trials,
        bound_realizations: trials,
        ..SimConfig::default()
    };
    let curve = run_curve(&cfg)?;
    println!(
        "{} B={} M={}, {} trials per point",
        curve.strategy, curve.b, curve.m, trials
    );
    println!("  P[dBm]   simulated       ±SE       bound");
    for i in 0..curve.len() {
        println!(
            "  {:>6.1}   {:.3e}   {:.1e}   {:.3e}",
            curve.power_dbm[i],
            curve.aber_sim[i],
            curve.standard_error(i),
            curve.aber_bound[i]
        );
    }
    emit_curve_csv(&curve, &out)?;
    println!("wrote {}", out.display());
    Ok(())
}
