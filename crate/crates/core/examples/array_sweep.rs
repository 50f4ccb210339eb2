//! ABER at 20 dBm for growing Tx/Rx and RIS arrays.
//!
//! ```text
//! cargo run --release --example array_sweep -- [trials]
//! ```

use ris_cim::harness::{run_array_sweep, ArraySize};
use ris_cim::SimConfig;

fn main() -> ris_cim::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2_000);
    let cfg = SimConfig {
        m: 4,
        b: 2,
        trials_per_point: trials,
        sweep_power_dbm: 20.0,
        ..SimConfig::default()
    };
    let sizes = [
        ArraySize::square(4, 6),
        ArraySize::square(6, 8),
        ArraySize::square(8, 10),
    ];
    for row in run_array_sweep(&cfg, &sizes)? {
        println!(
            "Tx/Rx {}x{}  RIS {}x{}  ABER {:.3e} ± {:.1e}",
            row.nt_x, row.nt_y, row.nris_x, row.nris_y, row.aber_sim, row.std_error
        );
    }
    Ok(())
}
