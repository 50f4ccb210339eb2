mod common;

use common::{steering_oracle, upa, LAMBDA};
use proptest::prelude::*;
use ris_cim::arrays::{Angle2D, ArrayGeometry};

#[test]
fn broadside_response_is_flat() {
    for n in [1, 2, 4, 8] {
        let g = upa(n);
        let a = g.steering_vector(Angle2D::new(0.0, 0.0));
        let v = 1.0 / (n * n) as f64;
        for z in a.iter() {
            assert!((z.re - v.sqrt()).abs() < 1e-15 && z.im.abs() < 1e-15);
        }
    }
}

#[test]
fn elements_are_row_major_with_x_fastest() {
    let g = ArrayGeometry::new(3, 2, 0.004, 0.007, LAMBDA).unwrap();
    assert_eq!(g.position(1), [0.004, 0.0]);
    assert_eq!(g.position(3), [0.0, 0.007]);
    let a = g.steering_vector(Angle2D::new(0.0, std::f64::consts::FRAC_PI_2));
    let oracle = steering_oracle(&g, 0.0, std::f64::consts::FRAC_PI_2);
    // Azimuth 0 at endfire: only the x index changes the phase.
    assert!((a[0] - a[3]).norm() < 1e-14);
    assert!((a[1] - a[0]).norm() > 0.1);
    for (x, y) in a.iter().zip(&oracle) {
        assert!((x - y).norm() < 1e-14);
    }
}

#[test]
fn rejects_bad_geometry() {
    assert!(ArrayGeometry::new(0, 4, 0.005, 0.005, LAMBDA).is_err());
    assert!(ArrayGeometry::new(4, 4, -1.0, 0.005, LAMBDA).is_err());
    assert!(ArrayGeometry::new(4, 4, 0.005, 0.005, 0.0).is_err());
}

proptest! {
    #[test]
    fn matches_elementwise_oracle(
        nx in 1usize..9, ny in 1usize..9,
        az in 0.0..std::f64::consts::TAU, el in 0.0..std::f64::consts::PI,
    ) {
        let g = ArrayGeometry::half_wavelength(nx, ny, LAMBDA).unwrap();
        let a = g.steering_vector(Angle2D::new(az, el));
        let oracle = steering_oracle(&g, az, el);
        for (x, y) in a.iter().zip(&oracle) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn unit_norm(
        nx in 1usize..13, ny in 1usize..13,
        az in -10.0..10.0f64, el in -10.0..10.0f64,
    ) {
        let a = ArrayGeometry::half_wavelength(nx, ny, LAMBDA)
            .unwrap()
            .steering_vector(Angle2D::new(az, el));
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angles_wrap_into_range(az in -50.0..50.0f64, el in -50.0..50.0f64) {
        let a = Angle2D::new(az, el);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&a.azimuth()));
        prop_assert!((0.0..std::f64::consts::PI).contains(&a.elevation()));
    }
}
