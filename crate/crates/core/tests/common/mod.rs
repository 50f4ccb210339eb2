#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use ris_cim::arrays::{Angle2D, ArrayGeometry};
use ris_cim::channel::LinkArrays;

pub const LAMBDA: f64 = 2.998e8 / 28e9;

pub fn upa(n: usize) -> ArrayGeometry {
    ArrayGeometry::half_wavelength(n, n, LAMBDA).unwrap()
}

pub fn link_arrays(nt: usize, n: usize, nr: usize) -> LinkArrays {
    LinkArrays {
        tx: upa(nt),
        ris: upa(n),
        rx: upa(nr),
    }
}

/// `exp(j kᵀp_n)/√Na` written out element by element.
pub fn steering_oracle(g: &ArrayGeometry, az: f64, el: f64) -> Vec<Complex64> {
    let k = 2.0 * std::f64::consts::PI / g.wavelength();
    let na = (g.nx() * g.ny()) as f64;
    let mut out = Vec::new();
    for iy in 0..g.ny() {
        for ix in 0..g.nx() {
            let phase =
                k * el.sin() * (az.cos() * ix as f64 * g.dx() + az.sin() * iy as f64 * g.dy());
            out.push(Complex64::new(phase.cos(), phase.sin()) / na.sqrt());
        }
    }
    out
}

pub fn cn<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(s * re, s * im)
}

pub fn cn_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, variance: f64) -> DVector<Complex64> {
    DVector::from_fn(n, |_, _| cn(rng, variance))
}

pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> Angle2D {
    Angle2D::new(
        rng.random::<f64>() * std::f64::consts::TAU,
        rng.random::<f64>() * std::f64::consts::PI,
    )
}

/// Combiner whose columns are receive steering vectors at random angles.
pub fn random_combiner<R: Rng + ?Sized>(
    rng: &mut R,
    rx: &ArrayGeometry,
    b: usize,
) -> DMatrix<Complex64> {
    let cols: Vec<_> = (0..b)
        .map(|_| rx.steering_vector(random_angle(rng)))
        .collect();
    DMatrix::from_columns(&cols)
}

/// Sample covariance `(1/n)·Σ x xᴴ` of the rows produced by `draw`.
pub fn sample_covariance(
    n: usize,
    dim: usize,
    mut draw: impl FnMut() -> DVector<Complex64>,
) -> DMatrix<Complex64> {
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for _ in 0..n {
        let x = draw();
        acc.gerc(Complex64::new(1.0, 0.0), &x, &x, Complex64::new(1.0, 0.0));
    }
    acc / Complex64::new(n as f64, 0.0)
}

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}
