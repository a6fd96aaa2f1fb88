//! Numeric kernel: vectors, rotations, closest-point queries and convex hulls.
//!
//! Everything in here is a pure function of its inputs. [`SurfaceMesh`] is
//! immutable once built and can be shared freely between threads.

mod hull;
mod mesh;
mod rotation;
mod triangle;

pub use hull::{convex_hull, convexify, HULL_PLANE_EPS};
pub use mesh::{closest_point_on_surface, SurfaceMesh, SurfacePoint, MIN_TRIANGLE_AREA};
pub use rotation::{rodrigues, Rot3};
pub use triangle::{closest_point_on_triangle, triangle_area};

use thiserror::Error;

/// Positions (meters) and directions (dimensionless) share one type.
pub type Vec3 = nalgebra::Vector3<f64>;

/// Tolerance on `‖axis‖ = 1` accepted by [`rodrigues`].
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("rotation axis must be unit length, got norm {0}")]
    InvalidAxis(f64),
    #[error("rotation angle must be finite, got {0}")]
    InvalidAngle(f64),
    #[error("degenerate triangle with area {0:e} m^2")]
    DegenerateTriangle(f64),
    #[error("mesh has no triangles")]
    EmptyMesh,
    #[error("points are coplanar or collinear, no 3-d hull exists")]
    DegenerateHull,
    #[error("invalid mesh ({reason}); offending faces: {faces:?}")]
    InvalidMesh { reason: String, faces: Vec<usize> },
}

/// Returns `v / ‖v‖`, or `None` when the norm is below `min_norm`.
pub fn try_normalize(v: &Vec3, min_norm: f64) -> Option<Vec3> {
    let n = v.norm();
    if n < min_norm || !n.is_finite() {
        None
    } else {
        Some(v / n)
    }
}

/// Converts a serialized `[x, y, z]` into a [`Vec3`].
pub fn vec3(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

/// Flattens a [`Vec3`] for serialization.
pub fn to_array(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}
