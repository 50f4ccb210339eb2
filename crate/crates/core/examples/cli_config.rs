//! Writes the default configuration as TOML, the file format read by
//! `ris-cim --config`.
//!
//! ```text
//! cargo run --example cli_config > sim.toml
//! ```

fn main() {
    let cfg = ris_cim::SimConfig::default();
    println!(
        "# noise power {} dBm, wavelength {:.4} m",
        cfg.noise_power_dbm(),
        cfg.wavelength()
    );
    print!("{}", cfg.to_toml_string());
}
