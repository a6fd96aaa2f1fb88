//! Mesh ingestion, export and parametric body-part stand-ins.
//!
//! Formats: ASCII OBJ (`v`/`f` lines, triangles only) and STL (binary, plus
//! ASCII for convenience) on input; OBJ or binary STL on output.

mod generate;
mod obj;
mod stl;

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::geometry::{convexify, GeometryError, SurfaceMesh, Vec3};

pub use generate::{generate_mesh, MeshKind, MeshSpec};
pub(crate) use obj::write_obj_body;
pub use obj::{parse_obj, write_obj};
pub use stl::{parse_stl, write_stl_binary};

/// Tolerance (m) for the face-plane audit that decides whether a loaded
/// mesh is already convex.
pub const CONVEXITY_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum MeshIoError {
    #[error("invalid mesh spec: {0}")]
    InvalidSpec(String),
    #[error("format error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    FormatError {
        line: Option<usize>,
        message: String,
    },
    #[error("invalid mesh ({reason}); offending faces: {faces:?}")]
    InvalidMesh { reason: String, faces: Vec<usize> },
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("i/o error: {0}")]
    IoError(#[from] std::io::Error),
    #[error(transparent)]
    Geometry(GeometryError),
}

impl From<GeometryError> for MeshIoError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::InvalidMesh { reason, faces } => {
                MeshIoError::InvalidMesh { reason, faces }
            }
            other => MeshIoError::Geometry(other),
        }
    }
}

impl MeshIoError {
    pub(crate) fn format(line: Option<usize>, message: impl Into<String>) -> Self {
        MeshIoError::FormatError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoadOptions {
    /// Multiplier applied to every coordinate (0.001 for millimeter files).
    pub scale: f64,
    /// Replace non-convex input by its convex hull. Off for concave planning.
    pub convexify: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            scale: 1.0,
            convexify: true,
        }
    }
}

/// Raw vertex/index data as read from disk, before validation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
}

/// Loads a mesh with default options (meters, convexified).
pub fn load_mesh(path: impl AsRef<Path>) -> Result<SurfaceMesh, MeshIoError> {
    load_mesh_with(path, LoadOptions::default())
}

pub fn load_mesh_with(
    path: impl AsRef<Path>,
    opts: LoadOptions,
) -> Result<SurfaceMesh, MeshIoError> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(MeshIoError::FileNotFound(path.display().to_string()));
    }
    let bytes = fs::read(path)?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let raw = match ext.as_deref() {
        Some("obj") => parse_obj(&String::from_utf8_lossy(&bytes))?,
        Some("stl") => parse_stl(&bytes)?,
        _ if bytes.starts_with(b"solid") || stl::looks_binary(&bytes) => parse_stl(&bytes)?,
        _ => parse_obj(&String::from_utf8_lossy(&bytes))?,
    };
    if !(opts.scale.is_finite() && opts.scale > 0.0) {
        return Err(MeshIoError::InvalidSpec(format!(
            "scale must be positive, got {}",
            opts.scale
        )));
    }
    let vertices = raw.vertices.into_iter().map(|v| v * opts.scale).collect();
    let mesh = SurfaceMesh::new(vertices, raw.triangles)?;
    if opts.convexify {
        prepare_convex(mesh)
    } else {
        Ok(mesh)
    }
}

/// Keeps an already-convex mesh (faces oriented away from its centroid),
/// otherwise replaces it by the convex hull of its vertices. Flat patches
/// pass the audit and keep their winding.
pub fn prepare_convex(mesh: SurfaceMesh) -> Result<SurfaceMesh, MeshIoError> {
    let oriented = mesh.oriented_outward();
    if oriented.is_convex(CONVEXITY_TOL) {
        return Ok(oriented);
    }
    log::info!("mesh is not convex, replacing it by its convex hull");
    Ok(convexify(&oriented)?)
}

/// Writes OBJ, or binary STL when the extension is `.stl`.
pub fn save_mesh(mesh: &SurfaceMesh, path: impl AsRef<Path>) -> Result<(), MeshIoError> {
    let path = path.as_ref();
    let is_stl = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("stl"));
    if is_stl {
        fs::write(path, write_stl_binary(mesh))?;
    } else {
        fs::write(path, write_obj(mesh))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_to_missing_directory_is_io_error() {
        let mesh = generate_mesh(&MeshSpec::plane(0.3, 0.3)).unwrap();
        let err = save_mesh(&mesh, "/nonexistent-dir/sub/plane.obj").unwrap_err();
        assert!(matches!(err, MeshIoError::IoError(_)));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            load_mesh("/no/such/mesh.obj"),
            Err(MeshIoError::FileNotFound(_))
        ));
    }

    #[test]
    fn zero_area_face_names_face() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.obj");
        fs::write(
            &path,
            "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 2 0 0\nf 1 2 3\nf 1 2 4\n",
        )
        .unwrap();
        match load_mesh(&path) {
            Err(MeshIoError::InvalidMesh { faces, .. }) => assert_eq!(faces, vec![1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scale_applied_on_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cube_mm.obj");
        let cube = generate::unit_cube_obj(1000.0);
        fs::write(&path, cube).unwrap();
        let mesh = load_mesh_with(
            &path,
            LoadOptions {
                scale: 0.001,
                convexify: true,
            },
        )
        .unwrap();
        let max = mesh.vertices().iter().map(|v| v.amax()).fold(0.0, f64::max);
        assert!((max - 1.0).abs() < 1e-12);
        assert_eq!(mesh.face_count(), 12);
    }
}
