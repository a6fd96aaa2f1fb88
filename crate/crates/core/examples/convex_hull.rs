//! Convex hull of a random point cloud and its half-space audit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tapewrap::geometry::{convex_hull, Vec3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cloud: Vec<Vec3> = (0..500)
        .map(|_| {
            Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.2..0.2),
            )
        })
        .collect();
    let hull = convex_hull(&cloud)?;
    let worst = cloud
        .iter()
        .map(|p| {
            hull.triangles()
                .iter()
                .zip(hull.normals())
                .map(|(t, n)| n.dot(&(p - hull.vertices()[t[0]])))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    println!(
        "500 points -> hull with {} vertices, {} faces",
        hull.vertices().len(),
        hull.face_count()
    );
    println!("largest signed distance of any input point above a face: {worst:.2e}");
    println!(
        "hull convexity violation: {:.2e}",
        hull.convexity_violation()
    );
    Ok(())
}
