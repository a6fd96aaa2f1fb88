//! Rodrigues rotations: composition about a shared axis, quaternion export
//! and axis-angle recovery.

use std::f64::consts::PI;

use tapewrap::geometry::{rodrigues, Rot3, Vec3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let axis = Vec3::new(1.0, 2.0, 2.0).normalize();
    let step = 0.5_f64.to_radians();

    // 180 small steps add up to one 90 degree turn
    let mut acc = Rot3::identity();
    let r = rodrigues(&axis, step)?;
    for _ in 0..180 {
        acc = r * acc;
    }
    let direct = rodrigues(&axis, PI / 2.0)?;
    println!(
        "180 x 0.5 deg vs 90 deg: max |diff| = {:.2e}",
        acc.max_abs_diff(&direct)
    );
    println!(
        "orthonormality error after stepping: {:.2e}",
        acc.orthonormality_error()
    );

    let q = direct.to_quaternion();
    println!(
        "quaternion [w, x, y, z] = [{:.6}, {:.6}, {:.6}, {:.6}]",
        q[0], q[1], q[2], q[3]
    );
    let back = Rot3::from_quaternion(q);
    println!("quaternion round trip: {:.2e}", back.max_abs_diff(&direct));

    if let Some((a, angle)) = direct.axis_angle() {
        println!(
            "recovered axis {:.6?}, angle {:.6} deg",
            a.as_slice(),
            angle.to_degrees()
        );
    }
    let v = Vec3::new(0.0, 0.0, 1.0);
    println!("z rotated: {:.6?}", direct.apply(&v).as_slice());
    Ok(())
}
