//! Closest-point queries against a faceted cylinder: projected position,
//! face normal and signed distance (negative inside).

use tapewrap::geometry::Vec3;
use tapewrap::mesh_io::{generate_mesh, MeshSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = MeshSpec::cylinder(0.05, 0.4);
    let mesh = generate_mesh(&spec)?;
    println!(
        "cylinder r = 0.05 m: {} faces, chordal tolerance {:.2e} m",
        mesh.face_count(),
        spec.chordal_tolerance()
    );

    let queries = [
        Vec3::new(0.08, 0.0, 0.0),
        Vec3::new(0.03, 0.03, 0.1),
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(-0.05, 0.001, -0.15),
    ];
    for q in &queries {
        let sp = mesh.closest_point(q)?;
        println!(
            "query {:>24} -> point {:>24}  normal {:>22}  signed distance {:+.5} m",
            format!("{:.3?}", q.as_slice()),
            format!("{:.4?}", sp.position.as_slice()),
            format!("{:.3?}", sp.normal.as_slice()),
            sp.signed_distance
        );
    }
    Ok(())
}
