//! ABER over a grid of cluster and path counts for each indexing scheme.
//!
//! ```text
//! cargo run --release --example sparsity_sweep -- [trials]
//! ```

use ris_cim::harness::run_sparsity_sweep;
use ris_cim::{SimConfig, Strategy};

fn main() -> ris_cim::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2_000);
    let cfg = SimConfig {
        trials_per_point: trials,
        ..SimConfig::default()
    };
    let clusters = [2, 4, 8];
    let paths = [2, 5, 10];
    let strategies = [Strategy::Bgcs, Strategy::SimpleCim, Strategy::Ssm];
    let rows = run_sparsity_sweep(&cfg, &clusters, &paths, &strategies)?;
    for chunk in rows.chunks(paths.len()) {
        let cells: Vec<String> = chunk
            .iter()
            .map(|r| format!("{:.3e}", r.aber_sim))
            .collect();
        println!(
            "{:>10}  C={}  L={:?}: {}",
            chunk[0].strategy.name(),
            chunk[0].clusters,
            paths,
            cells.join("  ")
        );
    }
    Ok(())
}
