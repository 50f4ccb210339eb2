//! BGCS-CIM against SIMPLE-CIM, SSM and RCS on shared seeds.
//!
//! ```text
//! cargo run --release --example benchmarks -- [trials]
//! ```

use ris_cim::harness::run_curve;
use ris_cim::{SimConfig, Strategy};

fn main() -> ris_cim::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5_000);
    let powers = vec![0.0, 10.0, 20.0, 30.0];
    print!("{:>12}", "P[dBm]");
    for p in &powers {
        print!("{p:>11.0}");
    }
    println!();
    for strategy in Strategy::ALL {
        let cfg = SimConfig {
            strategy,
            powers_dbm: powers.clone(),
            trials_per_point: trials,
            bound_realizations: 0,
            ..SimConfig::default()
        };
        let curve = run_curve(&cfg)?;
        print!("{:>12}", strategy.name());
        for a in &curve.aber_sim {
            print!("{a:>11.3e}");
        }
        println!();
    }
    Ok(())
}
