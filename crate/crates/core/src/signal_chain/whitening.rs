//! Standardized zero-phase (ZCA-cor) whitening of the combined noise.
//!
//! With combiner `W` the noise after combining, `Wᴴn`, has covariance
//! `Σ = σ²·WᴴW`. Writing `V = diag(Σ)` and `P = V^{-1/2} Σ V^{-1/2}` for
//! its correlation matrix, the transform `B = P^{-1/2} V^{-1/2}` gives
//! `B Σ Bᴴ = I`. Of all whitening transforms it keeps the output most
//! correlated with the standardized input. The combined receive filter is
//! `F_r = W·Bᴴ`, so `F_rᴴ n = B·Wᴴn`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Eigenvalues of the correlation matrix below this fraction of the largest
/// one are treated as zero.
pub const EIGEN_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WhiteningFilter {
    /// `B × B` whitening transform.
    pub transform: DMatrix<Complex64>,
    /// `N_r × B` combined receive filter `W·transformᴴ`.
    pub fr: DMatrix<Complex64>,
}

impl WhiteningFilter {
    /// Number of branches.
    pub fn branches(&self) -> usize {
        self.transform.nrows()
    }

    /// Column `i` of `F_r`.
    pub fn branch(&self, i: usize) -> nalgebra::DVectorView<'_, Complex64> {
        self.fr.column(i)
    }
}

/// Inverse principal square root of a Hermitian positive-definite matrix.
pub fn inverse_sqrt_hermitian(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let eig = m.clone().symmetric_eigen();
    let max = eig.eigenvalues.max();
    let min = eig.eigenvalues.min();
    if !(max > 0.0) || min <= EIGEN_FLOOR * max {
        return Err(Error::SingularCombiner {
            ratio: if max > 0.0 { min / max } else { 0.0 },
        });
    }
    let u = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::new(l.sqrt().recip(), 0.0)),
    );
    Ok(u * d * u.adjoint())
}

/// ZCA-cor whitening for combiner `w` (`N_r × B`) and noise variance `sigma2`.
pub fn build_whitening(w: &DMatrix<Complex64>, sigma2: f64) -> Result<WhiteningFilter> {
    if !(sigma2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be positive, got {sigma2}"
        )));
    }
    let cov = w.adjoint() * w * Complex64::new(sigma2, 0.0);
    let inv_std: Vec<f64> = cov.diagonal().iter().map(|v| v.re.sqrt().recip()).collect();
    if inv_std.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularCombiner { ratio: 0.0 });
    }
    let b = cov.nrows();
    let corr = DMatrix::from_fn(b, b, |i, j| cov[(i, j)] * inv_std[i] * inv_std[j]);
    let corr_isqrt = inverse_sqrt_hermitian(&corr)?;
    // P^{-1/2} V^{-1/2}: scale column j by V_jj^{-1/2}.
    let transform = DMatrix::from_fn(b, b, |i, j| corr_isqrt[(i, j)] * inv_std[j]);
    let fr = w * transform.adjoint();
    Ok(WhiteningFilter { transform, fr })
}
