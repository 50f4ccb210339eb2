//! Draws one cascaded channel with the default outdoor geometry, prints its
//! summary and dumps it as CSV.
//!
//! ```text
//! cargo run --example channel_draw -- [out.csv]
//! ```

use ris_cim::harness::trial_rng;
use ris_cim::SimConfig;

fn main() -> ris_cim::Result<()> {
    let cfg = SimConfig::default();
    let model = cfg.channel_model()?;
    let h = model.draw(&mut trial_rng(cfg.seed, 0))?;

    println!(
        "Tx-RIS {:.2} m, RIS-Rx {:.2} m",
        model.tx_ris_distance(),
        model.ris_rx_distance()
    );
    println!(
        "G: {}x{}, |α0|² = {:.3e}",
        h.g.nrows(),
        h.g.ncols(),
        h.alpha0.norm_sqr()
    );
    println!(
        "R: {}x{}, {} clusters x {} paths, scale {:.3}",
        h.r.nrows(),
        h.r.ncols(),
        h.num_clusters(),
        h.paths_per_cluster(),
        h.scale_r
    );
    for (c, cl) in h.clusters.clusters().iter().enumerate() {
        let power: f64 = h.beta.row(c).iter().map(|b| b.norm_sqr()).sum();
        println!(
            "  cluster {c}: dep az {:6.1}° el {:5.1}°, arr az {:6.1}° el {:5.1}°, Σ|β|² = {power:.3e}",
            cl.departure_mean.azimuth().to_degrees(),
            cl.departure_mean.elevation().to_degrees(),
            cl.arrival_mean.azimuth().to_degrees(),
            cl.arrival_mean.elevation().to_degrees(),
        );
    }

    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "channel.csv".into());
    let file = std::fs::File::create(&path).map_err(|source| ris_cim::Error::Io {
        path: path.clone().into(),
        source,
    })?;
    h.write_csv(file).map_err(|source| ris_cim::Error::Csv {
        path: path.clone().into(),
        source,
    })?;
    println!("wrote {path}");
    Ok(())
}
