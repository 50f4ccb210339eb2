//! Builds the BGCS-CIM codebook and the three benchmarks on the same
//! channel and compares what they index.
//!
//! ```text
//! cargo run --example codebook
//! ```

use ris_cim::codebook::{build_codebook, PathGainEvaluator, Strategy};
use ris_cim::harness::trial_rng;
use ris_cim::units::dbm_to_watts;
use ris_cim::SimConfig;

fn main() -> ris_cim::Result<()> {
    let cfg = SimConfig::default();
    let radio = cfg.radio();
    let mut rng = trial_rng(cfg.seed, 3);
    let h = cfg.channel_model()?.draw(&mut rng)?;
    let f_t = h.tx_beamformer();
    let p = dbm_to_watts(20.0);

    let gains = PathGainEvaluator::new(&h, &f_t, p, radio.gain_amplitude)?.all_power_gains();
    println!("|𝒢|² per cluster (best path) at 20 dBm:");
    for c in 0..gains.nrows() {
        let row = gains.row(c);
        let (best, g) =
            row.iter().enumerate().fold(
                (0, f64::MIN),
                |acc, (i, &g)| if g > acc.1 { (i, g) } else { acc },
            );
        println!("  cluster {c}: path {best}  {g:.3e}");
    }

    for strategy in Strategy::ALL {
        let cb = build_codebook(strategy, &h, &f_t, cfg.b, p, radio.gain_amplitude, &mut rng)?;
        let picks: Vec<String> = cb
            .selected
            .iter()
            .map(|t| match t.path() {
                Some(l) => format!("({}, {l})", t.cluster()),
                None => format!("({}, mean)", t.cluster()),
            })
            .collect();
        println!("{strategy:>10}: B={} -> {}", cb.order(), picks.join(" "));
    }

    let cb = build_codebook(
        Strategy::Bgcs,
        &h,
        &f_t,
        cfg.b,
        p,
        radio.gain_amplitude,
        &mut rng,
    )?;
    let worst = cb
        .codewords
        .iter()
        .flat_map(|b| b.iter().map(|z| (z.norm() - 1.0).abs()))
        .fold(0.0, f64::max);
    println!("max ||b_n| - 1| over all codeword entries: {worst:.1e}");
    cb.write_csv(std::io::stdout().lock())
        .map_err(|e| ris_cim::Error::Parse(e.to_string()))?;
    Ok(())
}
