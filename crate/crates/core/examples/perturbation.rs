//! Robustness to stale angle information: the codebook is built from the
//! nominal channel, then every cluster moves by Δ before transmission.
//!
//! ```text
//! cargo run --release --example perturbation -- [trials]
//! ```

use ris_cim::harness::{power_offset_db, run_perturbation_sweep};
use ris_cim::SimConfig;

fn main() -> ris_cim::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2_000);
    let cfg = SimConfig {
        nt: [8, 8],
        nr: [8, 8],
        n_ris: [10, 10],
        powers_dbm: (0..=6).map(|i| 5.0 * i as f64).collect(),
        trials_per_point: trials,
        ..SimConfig::default()
    };
    let deltas = [0.0, 1.0, 2.0, 5.0];
    let rows = run_perturbation_sweep(&cfg, &deltas)?;
    let per_delta = cfg.powers_dbm.len();
    let curve = |k: usize| -> Vec<(f64, f64)> {
        rows[k * per_delta..(k + 1) * per_delta]
            .iter()
            .map(|r| (r.power_dbm, r.aber_sim))
            .collect()
    };
    for (k, d) in deltas.iter().enumerate() {
        let line: Vec<String> = curve(k).iter().map(|(_, a)| format!("{a:.2e}")).collect();
        println!("Δ = {d:>3}°  {}", line.join(" "));
    }
    match power_offset_db(&curve(0), &curve(3), 10.0) {
        Some(db) => println!("Δ = 5° needs {db:.1} dB more power to match Δ = 0 at 10 dBm"),
        None => println!("Δ = 5° curve does not reach the reference ABER"),
    }
    Ok(())
}
