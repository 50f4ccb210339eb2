//! Array responses of a UPA and the beam pattern of a matched steering
//! vector.
//!
//! ```text
//! cargo run --example steering_vectors
//! ```

use ris_cim::arrays::{Angle2D, ArrayGeometry};

fn main() -> ris_cim::Result<()> {
    let lambda = 2.998e8 / 28e9;
    let upa = ArrayGeometry::half_wavelength(8, 8, lambda)?;

    let broadside = upa.steering_vector(Angle2D::new(0.0, 0.0));
    println!("8x8 UPA, {} elements", upa.len());
    println!(
        "broadside: a[0] = {:.4}, |a| = {:.12}",
        broadside[0],
        broadside.norm()
    );

    let target = Angle2D::from_degrees(30.0, 40.0);
    let a = upa.steering_vector(target);
    println!("\nbeam steered to az=30 el=40, gain |a(θ)ᴴ a(target)|² across elevation:");
    for el in (0..=80).step_by(5) {
        let g = upa
            .steering_vector(Angle2D::from_degrees(30.0, el as f64))
            .dotc(&a)
            .norm_sqr();
        let bar = "#".repeat((g * 50.0).round() as usize);
        println!("  el {el:>2}°  {g:.3}  {bar}");
    }
    Ok(())
}
