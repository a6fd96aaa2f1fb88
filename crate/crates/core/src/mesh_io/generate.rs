use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::MeshIoError;
use crate::geometry::{convex_hull, SurfaceMesh, Vec3};

/// Parametric surface kinds. All dimensions are meters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeshKind {
    /// Flat patch in `z = 0`, centered at the origin, normals `+z`.
    Plane { width: f64, depth: f64 },
    /// Closed cylinder along `z`, centered at the origin (lower leg).
    Cylinder { radius: f64, length: f64 },
    /// Dome over the `z = 0` disk, closed by its base (hip).
    Hemisphere { radius: f64 },
    /// Hull of a quarter-cylinder heel, a sole slab and an ankle post.
    HeelComposite {
        heel_radius: f64,
        sole_length: f64,
        ankle_radius: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    #[serde(flatten)]
    pub kind: MeshKind,
    /// Facets per curved quarter-turn; grid cells per side for planes.
    pub resolution: usize,
}

impl MeshSpec {
    pub fn plane(width: f64, depth: f64) -> Self {
        MeshSpec {
            kind: MeshKind::Plane { width, depth },
            resolution: 8,
        }
    }

    pub fn cylinder(radius: f64, length: f64) -> Self {
        MeshSpec {
            kind: MeshKind::Cylinder { radius, length },
            resolution: 32,
        }
    }

    pub fn hemisphere(radius: f64) -> Self {
        MeshSpec {
            kind: MeshKind::Hemisphere { radius },
            resolution: 16,
        }
    }

    pub fn heel_composite(heel_radius: f64, sole_length: f64, ankle_radius: f64) -> Self {
        MeshSpec {
            kind: MeshKind::HeelComposite {
                heel_radius,
                sole_length,
                ankle_radius,
            },
            resolution: 16,
        }
    }

    /// Lower-leg stand-in: r = 0.05 m, 0.4 m long.
    pub fn leg() -> Self {
        Self::cylinder(0.05, 0.4)
    }

    /// Hip stand-in: r = 0.15 m dome.
    pub fn hip() -> Self {
        Self::hemisphere(0.15)
    }

    pub fn heel() -> Self {
        Self::heel_composite(0.04, 0.22, 0.035)
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn validate(&self) -> Result<(), MeshIoError> {
        let dims: Vec<(&str, f64)> = match self.kind {
            MeshKind::Plane { width, depth } => vec![("width", width), ("depth", depth)],
            MeshKind::Cylinder { radius, length } => vec![("radius", radius), ("length", length)],
            MeshKind::Hemisphere { radius } => vec![("radius", radius)],
            MeshKind::HeelComposite {
                heel_radius,
                sole_length,
                ankle_radius,
            } => vec![
                ("heel_radius", heel_radius),
                ("sole_length", sole_length),
                ("ankle_radius", ankle_radius),
            ],
        };
        for (name, value) in dims {
            if !(value.is_finite() && value > 0.0) {
                return Err(MeshIoError::InvalidSpec(format!(
                    "{name} must be > 0, got {value}"
                )));
            }
        }
        if self.resolution < 4 {
            return Err(MeshIoError::InvalidSpec(format!(
                "resolution must be >= 4, got {}",
                self.resolution
            )));
        }
        if let MeshKind::HeelComposite {
            heel_radius,
            sole_length,
            ..
        } = self.kind
        {
            if sole_length <= heel_radius {
                return Err(MeshIoError::InvalidSpec(format!(
                    "sole_length ({sole_length}) must exceed heel_radius ({heel_radius})"
                )));
            }
        }
        Ok(())
    }

    /// Upper bound on the distance between a generated facet and the
    /// analytic surface, `r·(1 − cos(π / (2·resolution)))`. Zero for planes.
    pub fn chordal_tolerance(&self) -> f64 {
        let r = match self.kind {
            MeshKind::Plane { .. } => return 0.0,
            MeshKind::Cylinder { radius, .. } | MeshKind::Hemisphere { radius } => radius,
            MeshKind::HeelComposite {
                heel_radius,
                ankle_radius,
                ..
            } => heel_radius.max(ankle_radius),
        };
        r * (1.0 - (PI / (2.0 * self.resolution as f64)).cos())
    }
}

/// Builds the mesh for `spec`. Curved kinds go through the convex hull, so
/// the result is closed, convex and outward-oriented.
pub fn generate_mesh(spec: &MeshSpec) -> Result<SurfaceMesh, MeshIoError> {
    spec.validate()?;
    let res = spec.resolution;
    match spec.kind {
        MeshKind::Plane { width, depth } => plane(width, depth, res),
        MeshKind::Cylinder { radius, length } => {
            let mut pts = Vec::new();
            ring(
                &mut pts,
                Vec3::new(0.0, 0.0, -0.5 * length),
                radius,
                4 * res,
            );
            ring(&mut pts, Vec3::new(0.0, 0.0, 0.5 * length), radius, 4 * res);
            Ok(convex_hull(&pts)?)
        }
        MeshKind::Hemisphere { radius } => {
            let mut pts = Vec::new();
            for k in 0..res {
                let elevation = FRAC_PI_2 * k as f64 / res as f64;
                let z = radius * elevation.sin();
                ring(
                    &mut pts,
                    Vec3::new(0.0, 0.0, z),
                    radius * elevation.cos(),
                    4 * res,
                );
            }
            pts.push(Vec3::new(0.0, 0.0, radius));
            Ok(convex_hull(&pts)?)
        }
        MeshKind::HeelComposite {
            heel_radius: rh,
            sole_length,
            ankle_radius: ra,
        } => {
            let mut pts = Vec::new();
            // heel: quarter-cylinder along x spanning the back-bottom quadrant
            for k in 0..=res {
                let t = PI + FRAC_PI_2 * k as f64 / res as f64;
                for x in [-rh, rh] {
                    pts.push(Vec3::new(x, rh + rh * t.cos(), rh + rh * t.sin()));
                }
            }
            // sole: slab in front of the heel
            for x in [-rh, rh] {
                for y in [rh, sole_length] {
                    for z in [0.0, rh] {
                        pts.push(Vec3::new(x, y, z));
                    }
                }
            }
            // ankle: vertical post above the heel
            ring(&mut pts, Vec3::new(0.0, rh, rh), ra, 4 * res);
            ring(&mut pts, Vec3::new(0.0, rh, 4.0 * rh), ra, 4 * res);
            Ok(convex_hull(&pts)?)
        }
    }
}

fn ring(pts: &mut Vec<Vec3>, center: Vec3, radius: f64, segments: usize) {
    for k in 0..segments {
        let a = 2.0 * PI * k as f64 / segments as f64;
        pts.push(center + Vec3::new(radius * a.cos(), radius * a.sin(), 0.0));
    }
}

fn plane(width: f64, depth: f64, cells: usize) -> Result<SurfaceMesh, MeshIoError> {
    let mut vertices = Vec::with_capacity((cells + 1) * (cells + 1));
    for j in 0..=cells {
        for i in 0..=cells {
            let x = -0.5 * width + width * i as f64 / cells as f64;
            let y = -0.5 * depth + depth * j as f64 / cells as f64;
            vertices.push(Vec3::new(x, y, 0.0));
        }
    }
    let idx = |i: usize, j: usize| j * (cells + 1) + i;
    let mut triangles = Vec::with_capacity(2 * cells * cells);
    for j in 0..cells {
        for i in 0..cells {
            triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    Ok(SurfaceMesh::new(vertices, triangles)?)
}

#[cfg(test)]
pub(crate) fn unit_cube_obj(scale: f64) -> String {
    // triangle soup: every face gets its own three vertices
    let c = |i: usize| {
        [
            (i & 1) as f64 * scale,
            ((i >> 1) & 1) as f64 * scale,
            ((i >> 2) & 1) as f64 * scale,
        ]
    };
    let faces = [
        [0, 2, 1],
        [1, 2, 3],
        [4, 5, 6],
        [5, 7, 6],
        [0, 1, 4],
        [1, 5, 4],
        [2, 6, 3],
        [3, 6, 7],
        [0, 4, 2],
        [2, 4, 6],
        [1, 3, 5],
        [3, 7, 5],
    ];
    let mut out = String::from("# unit cube soup\n");
    for (k, f) in faces.iter().enumerate() {
        for &v in f {
            let p = c(v);
            out.push_str(&format!("v {} {} {}\n", p[0], p[1], p[2]));
        }
        out.push_str(&format!("f {} {} {}\n", 3 * k + 1, 3 * k + 2, 3 * k + 3));
    }
    out
}
