//! Generates the parametric test surfaces, writes them as OBJ and binary
//! STL, reloads them and audits convexity.

use tapewrap::mesh_io::{generate_mesh, load_mesh, save_mesh, MeshSpec, CONVEXITY_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("tapewrap-examples");
    std::fs::create_dir_all(&dir)?;
    let specs = [
        ("plane", MeshSpec::plane(0.3, 0.3)),
        ("leg", MeshSpec::leg()),
        ("hip", MeshSpec::hip()),
        ("heel", MeshSpec::heel()),
    ];
    for (name, spec) in specs {
        let mesh = generate_mesh(&spec)?;
        for ext in ["obj", "stl"] {
            let path = dir.join(format!("{name}.{ext}"));
            save_mesh(&mesh, &path)?;
            let back = load_mesh(&path)?;
            println!(
                "{name:>5}.{ext}: {:>4} vertices {:>4} faces, reloaded {:>4} faces, convexity violation {:.1e} (limit {CONVEXITY_TOL:.0e})",
                mesh.vertices().len(),
                mesh.face_count(),
                back.face_count(),
                back.convexity_violation()
            );
        }
    }
    println!("files in {}", dir.display());
    Ok(())
}
