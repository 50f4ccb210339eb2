//! Uniform planar array geometry and steering vectors.
//!
//! Every terminal (Tx, Rx and the RIS) is a UPA lying in its local x–y
//! plane. Element `(n_x, n_y)` sits at `(n_x·d_x, n_y·d_y)` and the array
//! response toward `(azimuth, elevation)` is
//!
//! ```text
//! a_n = exp(j·kᵀp_n) / √Na,   k = 2π/λ · [sin(el)·cos(az), sin(el)·sin(az)]
//! ```
//!
//! Vectors are ordered row-major over `(n_x, n_y)` with `n_x` fastest, so
//! element index `n = n_y·nx + n_x`.

use std::f64::consts::{PI, TAU};

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Speed of light used to derive the carrier wavelength.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Layout of a uniform planar array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    nx: usize,
    ny: usize,
    dx: f64,
    dy: f64,
    wavelength: f64,
}

impl ArrayGeometry {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64, wavelength: f64) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidGeometry(format!(
                "element counts must be >= 1, got {nx}x{ny}"
            )));
        }
        for (name, v) in [("dx", dx), ("dy", dy), ("wavelength", wavelength)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidGeometry(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(Self {
            nx,
            ny,
            dx,
            dy,
            wavelength,
        })
    }

    /// Array with half-wavelength spacing on both axes.
    pub fn half_wavelength(nx: usize, ny: usize, wavelength: f64) -> Result<Self> {
        Self::new(nx, ny, wavelength / 2.0, wavelength / 2.0, wavelength)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Total number of elements `Na = nx·ny`.
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Element position `p_n` in meters for the row-major index `n`.
    pub fn position(&self, n: usize) -> [f64; 2] {
        let (ix, iy) = (n % self.nx, n / self.nx);
        [ix as f64 * self.dx, iy as f64 * self.dy]
    }

    /// Wave-number vector `k` for a direction.
    pub fn wave_number(&self, angle: Angle2D) -> [f64; 2] {
        let k = TAU / self.wavelength;
        let (s_el, _) = angle.elevation.sin_cos();
        let (s_az, c_az) = angle.azimuth.sin_cos();
        [k * s_el * c_az, k * s_el * s_az]
    }

    /// Normalized array response `a(angle)`; unit Euclidean norm.
    pub fn steering_vector(&self, angle: Angle2D) -> DVector<Complex64> {
        let [kx, ky] = self.wave_number(angle);
        let norm = 1.0 / (self.len() as f64).sqrt();
        // Per-axis phasors, each evaluated directly; the 2-D response is
        // their outer product.
        let px: Vec<Complex64> = (0..self.nx)
            .map(|i| Complex64::from_polar(1.0, kx * self.dx * i as f64))
            .collect();
        let py: Vec<Complex64> = (0..self.ny)
            .map(|i| Complex64::from_polar(norm, ky * self.dy * i as f64))
            .collect();
        DVector::from_iterator(
            self.len(),
            py.iter().flat_map(|&y| px.iter().map(move |&x| x * y)),
        )
    }
}

/// Free-function form of [`ArrayGeometry::steering_vector`].
pub fn steering_vector(geom: &ArrayGeometry, angle: Angle2D) -> DVector<Complex64> {
    geom.steering_vector(angle)
}

/// Azimuth/elevation pair in radians.
///
/// Azimuth is kept in `[0, 2π)` and elevation in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle2D {
    azimuth: f64,
    elevation: f64,
}

impl Angle2D {
    pub fn new(azimuth: f64, elevation: f64) -> Self {
        Self {
            azimuth: wrap(azimuth, TAU),
            elevation: wrap(elevation, PI),
        }
    }

    pub fn from_degrees(azimuth: f64, elevation: f64) -> Self {
        Self::new(azimuth.to_radians(), elevation.to_radians())
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }

    /// Rigid shift of both components, re-wrapped.
    pub fn shifted(&self, d_azimuth: f64, d_elevation: f64) -> Self {
        Self::new(self.azimuth + d_azimuth, self.elevation + d_elevation)
    }
}

fn wrap(x: f64, period: f64) -> f64 {
    let w = x.rem_euclid(period);
    // rem_euclid can round up to exactly `period` for tiny negative inputs.
    if w >= period {
        0.0
    } else {
        w
    }
}
