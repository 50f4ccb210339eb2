//! ZCA-cor whitening of two correlated combiner branches, checked against
//! the sample covariance of filtered noise.
//!
//! ```text
//! cargo run --release --example whitening
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use ris_cim::signal_chain::build_whitening;

fn main() -> ris_cim::Result<()> {
    let lambda = 2.998e8 / 28e9;
    let rx = ris_cim::ArrayGeometry::half_wavelength(4, 4, lambda)?;
    let w1 = rx.steering_vector(ris_cim::Angle2D::from_degrees(20.0, 30.0));
    let w2 = rx.steering_vector(ris_cim::Angle2D::from_degrees(35.0, 38.0));
    let w = DMatrix::from_columns(&[w1, w2]);
    let sigma2 = 0.5;

    let gram = w.adjoint() * &w;
    println!("combiner correlation |w1ᴴw2| = {:.3}", gram[(0, 1)].norm());
    let filt = build_whitening(&w, sigma2)?;

    let n = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = (sigma2 / 2.0).sqrt();
    let mut raw = DMatrix::<Complex64>::zeros(2, 2);
    let mut white = DMatrix::<Complex64>::zeros(2, 2);
    for _ in 0..n {
        let noise = nalgebra::DVector::from_fn(rx.len(), |_, _| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(s * re, s * im)
        });
        let y = w.adjoint() * &noise;
        let z = filt.fr.adjoint() * &noise;
        raw += &y * y.adjoint();
        white += &z * z.adjoint();
    }
    raw /= Complex64::new(n as f64, 0.0);
    white /= Complex64::new(n as f64, 0.0);
    println!("sample covariance of Wᴴn:\n{raw:.4}");
    println!("sample covariance of F_rᴴn:\n{white:.4}");
    Ok(())
}
