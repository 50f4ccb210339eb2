//! Transmit/receive chain: RIS reflection, combining, whitening and joint
//! maximum-likelihood detection of the codeword index and PSK point.
//!
//! For codeword `b` the effective channel is `H_b = G_t·G_r·R·diag(b)·G`
//! and the whitened branch outputs are
//!
//! ```text
//! z_F = √P · F_rᴴ · H_b · f_t · s + F_rᴴ · n,   n ~ CN(0, σ²·I)
//! ```
//!
//! The detector searches all `B·M` hypotheses with a per-branch metric
//! `|z_F(c) − √P·f_{r,c}ᴴ·H_{b_c}·f_t·s|²`: the sample of branch `c` is
//! compared with what that branch would carry if codeword `c` were sent.
//! A full-vector metric over all branches is the natural alternative; the
//! per-branch form is what the pairwise error analysis in [`crate::theory`]
//! assumes.

mod modulation;
mod whitening;

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::channel::ChannelRealization;
use crate::codebook::CimCodebook;
use crate::{Error, Result};

pub use modulation::{SymbolMapper, TxSymbol};
pub use whitening::{build_whitening, inverse_sqrt_hermitian, WhiteningFilter, EIGEN_FLOOR};

/// Tolerance on codeword modulus for a passive (phase-only) surface.
pub const UNIT_MODULUS_TOL: f64 = 1e-9;

/// Diagonal RIS reflection `diag(b)` with `|b_i| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile(DVector<Complex64>);

impl PhaseProfile {
    pub fn coefficients(&self) -> &DVector<Complex64> {
        &self.0
    }

    /// `(Ψ·x)_i = b_i·x_i`.
    pub fn apply(&self, x: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if x.len() != self.0.len() {
            return Err(Error::DimensionMismatch(format!(
                "reflection of {} elements applied to {} entries",
                self.0.len(),
                x.len()
            )));
        }
        Ok(self.0.component_mul(x))
    }

    /// `Ψ_a·Ψ_b`.
    pub fn compose(&self, other: &PhaseProfile) -> Result<PhaseProfile> {
        Ok(PhaseProfile(self.apply(&other.0)?))
    }

    pub fn conjugate(&self) -> PhaseProfile {
        PhaseProfile(self.0.conjugate())
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&self.0)
    }
}

/// Checks a codeword is phase-only and wraps it as a reflection.
pub fn ris_phase_matrix(codeword: &DVector<Complex64>) -> Result<PhaseProfile> {
    for (index, z) in codeword.iter().enumerate() {
        let modulus = z.norm();
        if (modulus - 1.0).abs() > UNIT_MODULUS_TOL {
            return Err(Error::NonUnitModulus { index, modulus });
        }
    }
    Ok(PhaseProfile(codeword.clone()))
}

/// `G_t·G_r·R·diag(b)·G` (`N_r × N_t`). `gain_amplitude` is the linear
/// amplitude product `G_t·G_r`.
pub fn effective_channel(
    g: &DMatrix<Complex64>,
    r: &DMatrix<Complex64>,
    codeword: &DVector<Complex64>,
    gain_amplitude: f64,
) -> Result<DMatrix<Complex64>> {
    if r.ncols() != codeword.len() || g.nrows() != codeword.len() {
        return Err(Error::DimensionMismatch(format!(
            "R is {:?}, codeword has {} entries, G is {:?}",
            r.shape(),
            codeword.len(),
            g.shape()
        )));
    }
    let psi = ris_phase_matrix(codeword)?;
    let mut reflected = g.clone();
    for (mut row, b) in reflected.row_iter_mut().zip(psi.coefficients().iter()) {
        row *= *b;
    }
    Ok(r * reflected * Complex64::new(gain_amplitude, 0.0))
}

/// Antenna gain and receiver noise shared by every trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    /// `G_t·G_r` as a linear amplitude factor.
    pub gain_amplitude: f64,
    /// Per-antenna noise variance `σ²` in watts.
    pub noise_variance: f64,
}

/// A realization, codebook and whitening filter bound together for
/// transmission and detection.
///
/// Stores the `B × B` branch responses `S[i, c] = f_{r,i}ᴴ·H_{b_c}·f_t`
/// (signal on branch `i` when codeword `c` is active, before `√P·s`).
#[derive(Debug, Clone)]
pub struct Link {
    responses: DMatrix<Complex64>,
    fr: DMatrix<Complex64>,
    branch_noise: Vec<f64>,
    noise_variance: f64,
    mapper: SymbolMapper,
}

impl Link {
    /// `realization` is the channel the signal actually crosses; `codebook`
    /// and `filter` may have been built from a different (stale) draw.
    pub fn new(
        realization: &ChannelRealization,
        codebook: &CimCodebook,
        filter: &WhiteningFilter,
        f_t: &DVector<Complex64>,
        radio: RadioParams,
        mapper: SymbolMapper,
    ) -> Result<Self> {
        let b = codebook.order();
        if mapper.codebook_order() != b || filter.branches() != b {
            return Err(Error::DimensionMismatch(format!(
                "codebook order {b}, mapper order {}, filter branches {}",
                mapper.codebook_order(),
                filter.branches()
            )));
        }
        if f_t.len() != realization.g.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "beamformer has {} entries, G has {} columns",
                f_t.len(),
                realization.g.ncols()
            )));
        }
        let illumination = &realization.g * f_t;
        let mut responses = DMatrix::zeros(b, b);
        for (c, codeword) in codebook.codewords.iter().enumerate() {
            let psi = ris_phase_matrix(codeword)?;
            let h = &realization.r
                * psi.apply(&illumination)?
                * Complex64::new(radio.gain_amplitude, 0.0);
            let s = filter.fr.adjoint() * h;
            responses.set_column(c, &s);
        }
        let branch_noise = filter
            .fr
            .column_iter()
            .map(|f| radio.noise_variance * f.norm_squared())
            .collect();
        Ok(Self {
            responses,
            fr: filter.fr.clone(),
            branch_noise,
            noise_variance: radio.noise_variance,
            mapper,
        })
    }

    pub fn mapper(&self) -> &SymbolMapper {
        &self.mapper
    }

    /// `S[i, c] = f_{r,i}ᴴ·H_{b_c}·f_t`.
    pub fn responses(&self) -> &DMatrix<Complex64> {
        &self.responses
    }

    /// Noise variance of branch `i` after filtering, `σ²·‖f_{r,i}‖²`.
    pub fn branch_noise_variance(&self, i: usize) -> f64 {
        self.branch_noise[i]
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// Noiseless branch outputs for a symbol at `power_w`.
    pub fn signal(&self, codeword: usize, point: Complex64, power_w: f64) -> DVector<Complex64> {
        self.responses.column(codeword) * (point * power_w.sqrt())
    }

    /// Draws `n ~ CN(0, σ²I)` at the receive array and returns `F_rᴴ·n`.
    pub fn filtered_noise<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<Complex64> {
        let s = (self.noise_variance / 2.0).sqrt();
        let n = DVector::from_fn(self.fr.nrows(), |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(s * re, s * im)
        });
        self.fr.adjoint() * n
    }

    /// Whitened branch outputs `z_F` for one symbol.
    pub fn transmit<R: Rng + ?Sized>(
        &self,
        symbol: &TxSymbol,
        power_w: f64,
        rng: &mut R,
    ) -> DVector<Complex64> {
        self.signal(symbol.codeword, symbol.point, power_w) + self.filtered_noise(rng)
    }

    /// Per-branch ML metric `|z_F(c) − √P·S[c,c]·x_s|²` for all hypotheses
    /// (`B × M`).
    pub fn metrics(&self, z: &DVector<Complex64>, power_w: f64) -> DMatrix<f64> {
        let sp = power_w.sqrt();
        let m = self.mapper.psk_order();
        DMatrix::from_fn(self.responses.nrows(), m, |c, s| {
            (z[c] - self.responses[(c, c)] * self.mapper.point(s) * sp).norm_sqr()
        })
    }

    /// Exhaustive ML search; ties go to the lowest `(codeword, symbol)`.
    pub fn ml_detect(&self, z: &DVector<Complex64>, power_w: f64) -> (usize, usize) {
        let sp = power_w.sqrt();
        let m = self.mapper.psk_order();
        let mut best = ((0, 0), f64::INFINITY);
        for c in 0..self.responses.nrows() {
            let expected = self.responses[(c, c)] * sp;
            for s in 0..m {
                let d = (z[c] - expected * self.mapper.point(s)).norm_sqr();
                if d < best.1 {
                    best = ((c, s), d);
                }
            }
        }
        best.0
    }

    /// Debug dump of all hypothesis metrics: `codeword,symbol,metric`.
    pub fn write_metrics_csv<W: Write>(
        &self,
        z: &DVector<Complex64>,
        power_w: f64,
        writer: W,
    ) -> std::result::Result<(), csv::Error> {
        let metrics = self.metrics(z, power_w);
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["codeword", "symbol", "metric"])?;
        for c in 0..metrics.nrows() {
            for s in 0..metrics.ncols() {
                w.write_record([c.to_string(), s.to_string(), metrics[(c, s)].to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
