//! Conditional pairwise error probabilities of one link and the resulting
//! union bound on the ABER, across transmit powers.
//!
//! ```text
//! cargo run --example pep_bounds
//! ```

use ris_cim::harness::Scenario;
use ris_cim::theory::{pairwise_terms, union_bound, PepKind};
use ris_cim::units::dbm_to_watts;
use ris_cim::SimConfig;

fn main() -> ris_cim::Result<()> {
    let cfg = SimConfig {
        m: 2,
        ..SimConfig::default()
    };
    let scenario = Scenario::from_config(&cfg)?;
    let trial = scenario.prepare_trial(cfg.seed, 0)?;
    let link = &trial.link;

    println!("branch responses S[i,c]:\n{:.3e}", link.responses());
    let p = dbm_to_watts(20.0);
    println!("pairwise terms at 20 dBm:");
    for t in pairwise_terms(link, p) {
        let ((ct, st), (ch, sh)) = t.hypothesis;
        let kind = match t.kind {
            PepKind::CorrectIndex => "same branch",
            PepKind::ErroneousIndex => "other branch",
        };
        println!("  ({ct},{st}) -> ({ch},{sh})  {kind:<12}  {:.3e}", t.value);
    }
    println!("\nconditional union bound:");
    for dbm in [0.0, 10.0, 20.0, 30.0, 40.0] {
        println!(
            "  {dbm:>4} dBm  {:.3e}",
            union_bound(link, dbm_to_watts(dbm))
        );
    }
    Ok(())
}
