//! dB/linear conversions.

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Watts to dBm.
pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

/// Power ratio in dB to a linear amplitude factor (`10^(dB/20)`).
pub fn db_to_amplitude(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// Power ratio in dB to a linear power factor (`10^(dB/10)`).
pub fn db_to_power(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Thermal noise power in dBm for a PSD in dBm/Hz over a bandwidth in Hz.
pub fn noise_power_dbm(psd_dbm_per_hz: f64, bandwidth_hz: f64) -> f64 {
    psd_dbm_per_hz + 10.0 * bandwidth_hz.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_floor_at_100mhz() {
        assert_eq!(noise_power_dbm(-174.0, 100e6), -94.0);
    }

    #[test]
    fn dbm_round_trip() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-15);
        assert!((watts_to_dbm(dbm_to_watts(-94.0)) + 94.0).abs() < 1e-12);
        assert!((db_to_amplitude(20.0) - 10.0).abs() < 1e-12);
        assert!((db_to_power(20.0) - 100.0).abs() < 1e-12);
    }
}
