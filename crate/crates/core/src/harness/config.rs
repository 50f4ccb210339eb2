use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arrays::{ArrayGeometry, SPEED_OF_LIGHT};
use crate::channel::{ChannelModel, LinkArrays, LosGeometry, PathLossParams};
use crate::codebook::Strategy;
use crate::signal_chain::RadioParams;
use crate::units::{db_to_amplitude, db_to_power, dbm_to_watts, noise_power_dbm};
use crate::{Error, Result};

/// Scalar applied to the channel matrix for a combined antenna gain in dB.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GainConvention {
    /// `10^(dB/10)`: the linear gain multiplies the field.
    #[default]
    Linear,
    /// `10^(dB/20)`: the field carries the square root of the power gain.
    Amplitude,
}

impl GainConvention {
    pub fn factor(&self, db: f64) -> f64 {
        match self {
            Self::Linear => db_to_power(db),
            Self::Amplitude => db_to_amplitude(db),
        }
    }
}

/// Simulation parameters. Field names double as the keys of the TOML
/// configuration file; every key is optional and defaults to the desk-scale
/// setup (outdoor backhaul geometry, 28 GHz, 4×4 Tx/Rx, 6×6 RIS, arrays
/// facing each other).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub tx_pos: [f64; 3],
    pub ris_pos: [f64; 3],
    pub rx_pos: [f64; 3],
    /// Carrier frequency in Hz.
    pub carrier_freq: f64,
    /// Bandwidth in Hz.
    pub bandwidth: f64,
    pub psd_dbm_per_hz: f64,
    /// `G_t = G_r` in dBi.
    pub antenna_gain_dbi: f64,
    /// How `G_t·G_r` enters the channel matrix.
    pub gain_convention: GainConvention,
    /// Tx UPA `[nx, ny]`.
    pub nt: [usize; 2],
    /// Rx UPA `[nx, ny]`.
    pub nr: [usize; 2],
    /// RIS UPA `[nx, ny]`.
    pub n_ris: [usize; 2],
    /// Element spacing in wavelengths.
    pub spacing_wavelengths: f64,
    pub num_clusters: usize,
    pub paths_per_cluster: usize,
    /// Intra-cluster angular spread (standard deviation) in degrees.
    pub spread_deg: f64,
    pub los_intercept_db: f64,
    pub los_slope: f64,
    pub los_shadow_db: f64,
    pub nlos_intercept_db: f64,
    pub nlos_slope: f64,
    pub nlos_shadow_db: f64,
    pub los_geometry: LosGeometry,
    /// PSK order `M`.
    pub m: usize,
    /// Requested codebook order `B` (RCS always uses 1).
    pub b: usize,
    pub strategy: Strategy,
    pub powers_dbm: Vec<f64>,
    pub trials_per_point: u64,
    /// Channel draws averaged by the union bound; 0 disables it.
    pub bound_realizations: u64,
    pub seed: u64,
    /// Rigid cluster displacement applied after codebook construction.
    pub angle_perturb_deg: Option<f64>,
    pub threads: Option<usize>,
    /// Square Tx/Rx sizes for the array sweep.
    pub sweep_antennas: Vec<usize>,
    /// Square RIS sizes paired with `sweep_antennas`.
    pub sweep_ris: Vec<usize>,
    pub sweep_clusters: Vec<usize>,
    pub sweep_paths: Vec<usize>,
    pub sweep_strategies: Vec<Strategy>,
    pub sweep_deltas_deg: Vec<f64>,
    /// Transmit power for the array and sparsity sweeps.
    pub sweep_power_dbm: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            tx_pos: [3.0, 0.0, 12.0],
            ris_pos: [0.0, 3.0, 15.0],
            rx_pos: [3.0, 103.0, 6.0],
            carrier_freq: 28e9,
            bandwidth: 100e6,
            psd_dbm_per_hz: -174.0,
            antenna_gain_dbi: 24.5,
            gain_convention: GainConvention::Linear,
            nt: [4, 4],
            nr: [4, 4],
            n_ris: [6, 6],
            spacing_wavelengths: 0.5,
            num_clusters: 8,
            paths_per_cluster: 10,
            spread_deg: 7.5,
            los_intercept_db: PathLossParams::LOS_28GHZ.intercept_db,
            los_slope: PathLossParams::LOS_28GHZ.slope,
            los_shadow_db: PathLossParams::LOS_28GHZ.shadow_std_db,
            nlos_intercept_db: PathLossParams::NLOS_28GHZ.intercept_db,
            nlos_slope: PathLossParams::NLOS_28GHZ.slope,
            nlos_shadow_db: PathLossParams::NLOS_28GHZ.shadow_std_db,
            los_geometry: LosGeometry::Facing,
            m: 4,
            b: 2,
            strategy: Strategy::Bgcs,
            powers_dbm: vec![0.0, 10.0, 20.0, 30.0, 40.0],
            trials_per_point: 10_000,
            bound_realizations: 200,
            seed: 1,
            angle_perturb_deg: None,
            threads: None,
            sweep_antennas: vec![4, 8],
            sweep_ris: vec![6, 10],
            sweep_clusters: vec![2, 4, 8],
            sweep_paths: vec![2, 5, 10],
            sweep_strategies: vec![Strategy::Bgcs, Strategy::SimpleCim, Strategy::Ssm],
            sweep_deltas_deg: vec![0.0, 1.0, 2.0, 5.0],
            sweep_power_dbm: 20.0,
        }
    }
}

impl SimConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq
    }

    /// `σ²` in dBm.
    pub fn noise_power_dbm(&self) -> f64 {
        noise_power_dbm(self.psd_dbm_per_hz, self.bandwidth)
    }

    /// `σ²` in watts.
    pub fn noise_variance(&self) -> f64 {
        dbm_to_watts(self.noise_power_dbm())
    }

    /// Codebook order after strategy adjustments.
    pub fn codebook_order(&self) -> usize {
        self.strategy.effective_order(self.b)
    }

    pub fn radio(&self) -> RadioParams {
        RadioParams {
            gain_amplitude: self.gain_convention.factor(2.0 * self.antenna_gain_dbi),
            noise_variance: self.noise_variance(),
        }
    }

    pub fn arrays(&self) -> Result<LinkArrays> {
        let lambda = self.wavelength();
        let d = self.spacing_wavelengths * lambda;
        let upa = |n: [usize; 2]| ArrayGeometry::new(n[0], n[1], d, d, lambda);
        Ok(LinkArrays {
            tx: upa(self.nt)?,
            ris: upa(self.n_ris)?,
            rx: upa(self.nr)?,
        })
    }

    pub fn channel_model(&self) -> Result<ChannelModel> {
        let model = ChannelModel {
            arrays: self.arrays()?,
            tx_pos: self.tx_pos,
            ris_pos: self.ris_pos,
            rx_pos: self.rx_pos,
            los_params: PathLossParams::new(
                self.los_intercept_db,
                self.los_slope,
                self.los_shadow_db,
            )?,
            nlos_params: PathLossParams::new(
                self.nlos_intercept_db,
                self.nlos_slope,
                self.nlos_shadow_db,
            )?,
            num_clusters: self.num_clusters,
            paths_per_cluster: self.paths_per_cluster,
            spread_deg: self.spread_deg,
            los_geometry: self.los_geometry,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.carrier_freq > 0.0 && self.bandwidth > 0.0) {
            return bad("carrier_freq and bandwidth must be positive".into());
        }
        if !(self.spacing_wavelengths > 0.0) {
            return bad("spacing_wavelengths must be positive".into());
        }
        for (name, v) in [("m", self.m), ("b", self.b)] {
            if v == 0 || !v.is_power_of_two() {
                return bad(format!("{name} must be a power of two, got {v}"));
            }
        }
        if self.m < 2 {
            return bad("m must be >= 2".into());
        }
        let limit = match self.strategy {
            Strategy::Ssm => self.num_clusters * self.paths_per_cluster,
            Strategy::Rcs => usize::MAX,
            _ => self.num_clusters,
        };
        if self.b > limit {
            return bad(format!(
                "b = {} exceeds what {} can index ({limit})",
                self.b, self.strategy
            ));
        }
        if self.powers_dbm.iter().any(|p| !p.is_finite()) {
            return bad("powers_dbm must be finite".into());
        }
        if let Some(d) = self.angle_perturb_deg {
            if !(d >= 0.0) {
                return bad(format!("angle_perturb_deg must be >= 0, got {d}"));
            }
        }
        if self.threads == Some(0) {
            return bad("threads must be >= 1".into());
        }
        if self.sweep_antennas.len() != self.sweep_ris.len() {
            return bad("sweep_antennas and sweep_ris must have equal length".into());
        }
        if self.sweep_deltas_deg.iter().any(|d| !(*d >= 0.0)) {
            return bad("sweep_deltas_deg must be >= 0".into());
        }
        self.channel_model()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = SimConfig::default();
        c.validate().unwrap();
        assert_eq!(c.noise_power_dbm(), -94.0);
        assert!((c.wavelength() - 0.010707).abs() < 1e-5);
        assert!((c.radio().gain_amplitude - 10f64.powf(4.9)).abs() < 1e-6);
        let amp = SimConfig {
            gain_convention: GainConvention::Amplitude,
            ..c
        };
        assert!((amp.radio().gain_amplitude - 10f64.powf(2.45)).abs() < 1e-9);
    }

    #[test]
    fn parses_flat_keys() {
        let c = SimConfig::from_toml_str(
            r#"
            m = 2
            b = 4
            strategy = "ssm"
            nt = [8, 8]
            powers_dbm = [10.0, 20.0]
            angle_perturb_deg = 2.0
            los_geometry = "horizontal"
            gain_convention = "amplitude"
            "#,
        )
        .unwrap();
        assert_eq!(c.m, 2);
        assert_eq!(c.strategy, Strategy::Ssm);
        assert_eq!(c.nt, [8, 8]);
        assert_eq!(c.nr, [4, 4]);
        assert_eq!(c.angle_perturb_deg, Some(2.0));
        assert_eq!(c.los_geometry, LosGeometry::Horizontal);
        assert_eq!(c.gain_convention, GainConvention::Amplitude);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(SimConfig::from_toml_str("m = 3").is_err());
        assert!(SimConfig::from_toml_str("b = 16").is_err());
        assert!(SimConfig::from_toml_str("unknown_key = 1").is_err());
        assert!(SimConfig::from_toml_str("nt = [0, 4]").is_err());
        assert!(SimConfig::from_toml_str("rx_pos = [0.0, 3.0, 15.0]").is_err());
        assert!(SimConfig::from_toml_str("strategy = \"omp\"").is_err());
        assert!(SimConfig::from_toml_str("b = 16\nstrategy = \"ssm\"").is_ok());
    }

    #[test]
    fn toml_round_trip() {
        let c = SimConfig {
            angle_perturb_deg: Some(1.5),
            ..SimConfig::default()
        };
        assert_eq!(SimConfig::from_toml_str(&c.to_toml_string()).unwrap(), c);
    }
}
