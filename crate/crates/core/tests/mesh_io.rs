use proptest::prelude::*;
use tapewrap::geometry::Vec3;
use tapewrap::mesh_io::{
    generate_mesh, load_mesh, load_mesh_with, parse_obj, parse_stl, save_mesh, write_obj,
    write_stl_binary, LoadOptions, MeshIoError, MeshSpec,
};

fn specs() -> Vec<MeshSpec> {
    vec![
        MeshSpec::plane(0.3, 0.2),
        MeshSpec::leg(),
        MeshSpec::hip(),
        MeshSpec::heel(),
    ]
}

#[test]
fn obj_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (k, spec) in specs().iter().enumerate() {
        let mesh = generate_mesh(spec).unwrap();
        let path = dir.path().join(format!("m{k}.obj"));
        save_mesh(&mesh, &path).unwrap();
        let back = load_mesh(&path).unwrap();
        assert_eq!(back.vertices(), mesh.vertices());
        assert_eq!(back.triangles(), mesh.triangles());
    }
}

#[test]
fn stl_round_trip_within_single_precision() {
    let dir = tempfile::tempdir().unwrap();
    for (k, spec) in specs().iter().enumerate() {
        let mesh = generate_mesh(spec).unwrap();
        let path = dir.path().join(format!("m{k}.stl"));
        save_mesh(&mesh, &path).unwrap();
        let back = load_mesh(&path).unwrap();
        assert_eq!(back.face_count(), mesh.face_count());
        for v in back.vertices() {
            let nearest = mesh
                .vertices()
                .iter()
                .map(|w| (v - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-7);
        }
    }
}

#[test]
fn stl_bytes_layout() {
    let mesh = generate_mesh(&MeshSpec::leg()).unwrap();
    let bytes = write_stl_binary(&mesh);
    assert_eq!(bytes.len(), 84 + 50 * mesh.face_count());
    let count = u32::from_le_bytes(bytes[80..84].try_into().unwrap());
    assert_eq!(count as usize, mesh.face_count());
    assert_eq!(
        parse_stl(&bytes).unwrap().triangles.len(),
        mesh.face_count()
    );
}

#[test]
fn ascii_stl_is_accepted() {
    let text = "solid t\n\
        facet normal 0 0 1\n outer loop\n  vertex 0 0 0\n  vertex 1 0 0\n  vertex 0 1 0\n endloop\nendfacet\n\
        endsolid t\n";
    let raw = parse_stl(text.as_bytes()).unwrap();
    assert_eq!(raw.triangles.len(), 1);
    assert_eq!(raw.vertices.len(), 3);
}

#[test]
fn millimeter_scale() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mm.obj");
    std::fs::write(&path, "v 0 0 0\nv 50 0 0\nv 0 50 0\nf 1 2 3\n").unwrap();
    let mesh = load_mesh_with(
        &path,
        LoadOptions {
            scale: 0.001,
            convexify: true,
        },
    )
    .unwrap();
    assert!(mesh.vertices().contains(&Vec3::new(0.05, 0.0, 0.0)));
}

#[test]
fn non_convex_input_is_hulled_unless_asked() {
    let trench = tapewrap::fixtures::trench().mesh;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trench.obj");
    std::fs::write(&path, write_obj(&trench)).unwrap();
    let hulled = load_mesh(&path).unwrap();
    assert!(hulled.is_convex(1e-7));
    let raw = load_mesh_with(
        &path,
        LoadOptions {
            convexify: false,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(raw.triangles(), trench.triangles());
    assert!(!raw.is_convex(1e-7));
}

#[test]
fn malformed_files() {
    assert!(matches!(
        parse_obj("v 0 0\nf 1 2 3\n"),
        Err(MeshIoError::FormatError { line: Some(1), .. })
    ));
    let raw = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n").unwrap();
    assert!(tapewrap::geometry::SurfaceMesh::new(raw.vertices, raw.triangles).is_err());
    assert!(matches!(
        parse_stl(&[0u8; 40]),
        Err(MeshIoError::FormatError { .. })
    ));
    assert!(matches!(
        load_mesh("/nonexistent/mesh.obj"),
        Err(MeshIoError::FileNotFound(_))
    ));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("degenerate.obj");
    std::fs::write(&path, "v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n").unwrap();
    assert!(matches!(
        load_mesh(&path),
        Err(MeshIoError::InvalidMesh { .. })
    ));
}

#[test]
fn invalid_specs_name_the_dimension() {
    for (spec, word) in [
        (MeshSpec::plane(-1.0, 0.3), "width"),
        (MeshSpec::cylinder(0.05, 0.0), "length"),
        (MeshSpec::hemisphere(f64::NAN), "radius"),
        (MeshSpec::heel_composite(0.04, 0.01, 0.035), "sole"),
    ] {
        let e = generate_mesh(&spec).unwrap_err();
        assert!(matches!(e, MeshIoError::InvalidSpec(_)));
        assert!(e.to_string().contains(word), "{e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_cylinders_round_trip(r in 0.01..0.2f64, len in 0.05..0.6f64, res in 4usize..40) {
        let spec = MeshSpec::cylinder(r, len).with_resolution(res);
        let mesh = generate_mesh(&spec).unwrap();
        prop_assert!(mesh.convexity_violation() <= 1e-7);
        let raw = parse_obj(&write_obj(&mesh)).unwrap();
        prop_assert_eq!(&raw.vertices, &mesh.vertices().to_vec());
        prop_assert_eq!(&raw.triangles, &mesh.triangles().to_vec());
        for v in mesh.vertices() {
            prop_assert!((v.xy().norm() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn generated_hemispheres_are_convex(r in 0.02..0.3f64, res in 4usize..24) {
        let mesh = generate_mesh(&MeshSpec::hemisphere(r).with_resolution(res)).unwrap();
        prop_assert!(mesh.convexity_violation() <= 1e-7);
        for v in mesh.vertices() {
            prop_assert!(v.norm() <= r + 1e-12);
        }
    }
}
