//! Ready-made planning scenarios on the generated body-part stand-ins.
//!
//! Used by the examples, the integration tests and the acceptance suite.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::geometry::{SurfaceMesh, Vec3};
use crate::mesh_io::{generate_mesh, MeshSpec};
use crate::planner::PlannerConfig;

/// A surface plus the tape placement request on it.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: &'static str,
    pub mesh: SurfaceMesh,
    pub p_init: Vec3,
    pub d_init: Vec3,
    pub tape_length: f64,
    pub config: PlannerConfig,
}

impl Scenario {
    /// Same scenario with a different taping direction.
    pub fn with_direction(mut self, d: Vec3) -> Self {
        self.d_init = d;
        self
    }
}

fn generated(spec: &MeshSpec) -> SurfaceMesh {
    generate_mesh(spec).expect("built-in mesh spec is valid")
}

/// 0.3 × 0.3 m flat patch, 150 mm tape along `+x`, dropped from 10 mm above.
pub fn plane() -> Scenario {
    Scenario {
        name: "plane",
        mesh: generated(&MeshSpec::plane(0.3, 0.3)),
        p_init: Vec3::new(0.0, 0.0, 0.01),
        d_init: Vec3::x(),
        tape_length: 0.15,
        config: PlannerConfig::default(),
    }
}

/// Lower leg: r = 50 mm cylinder, 150 mm tape wrapped circumferentially.
pub fn leg() -> Scenario {
    Scenario {
        name: "leg",
        mesh: generated(&MeshSpec::leg()),
        p_init: Vec3::new(0.05, 0.0, 0.0),
        d_init: Vec3::y(),
        tape_length: 0.15,
        config: PlannerConfig::default(),
    }
}

/// Hip: r = 150 mm dome, tape across the crown.
pub fn hip() -> Scenario {
    Scenario {
        name: "hip",
        mesh: generated(&MeshSpec::hip()),
        p_init: Vec3::new(0.02, 0.01, 0.16),
        d_init: Vec3::x(),
        tape_length: 0.15,
        config: PlannerConfig::default(),
    }
}

/// Heel: tape centered on the back-bottom of the heel, running from the
/// sole up toward the ankle.
pub fn heel() -> Scenario {
    let spec = MeshSpec::heel();
    let rh = match spec.kind {
        crate::mesh_io::MeshKind::HeelComposite { heel_radius, .. } => heel_radius,
        _ => unreachable!(),
    };
    let c = rh * (1.0 - FRAC_1_SQRT_2);
    Scenario {
        name: "heel",
        mesh: generated(&spec),
        p_init: Vec3::new(0.0, c, c),
        d_init: Vec3::new(0.0, -FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        tape_length: 0.15,
        config: PlannerConfig::default(),
    }
}

/// A 1 mm cube carrying a 150 mm tape: the free tails sweep circles that
/// never come within `ε` of the cube, so planning cannot finish.
pub fn overhang() -> Scenario {
    let h = 0.0005;
    let corners: Vec<Vec3> = (0..8)
        .map(|i| {
            Vec3::new(
                if i & 1 == 0 { -h } else { h },
                if i & 2 == 0 { -h } else { h },
                if i & 4 == 0 { -2.0 * h } else { 0.0 },
            )
        })
        .collect();
    Scenario {
        name: "overhang",
        mesh: crate::geometry::convex_hull(&corners).expect("cube hull"),
        p_init: Vec3::new(0.0, 0.0, 0.001),
        d_init: Vec3::x(),
        tape_length: 0.15,
        config: PlannerConfig {
            penetration_counts_as_contact: false,
            max_iterations: Some(2000),
            ..PlannerConfig::default()
        },
    }
}

/// Cross-section of the trench surface in the `xz` plane (m), extruded along `y`.
pub const TRENCH_PROFILE: [(f64, f64); 8] = [
    (-0.1, 0.0),
    (0.0, 0.0),
    (0.001, -0.01),
    (0.011, -0.01),
    (0.012, 0.0),
    (0.018, 0.0),
    (0.019, -0.01),
    (0.1, -0.01),
];

/// Non-convex strip: flat shelf, a 10 mm deep trench, a 6 mm wide ridge, then
/// a lower floor. A tape running along `+x` from the shelf edge first touches
/// the ridge with its third free element.
pub fn trench() -> Scenario {
    let half_width = 0.05;
    let mut vertices = Vec::new();
    for &(x, z) in &TRENCH_PROFILE {
        vertices.push(Vec3::new(x, -half_width, z));
        vertices.push(Vec3::new(x, half_width, z));
    }
    let mut triangles = Vec::new();
    for k in 0..TRENCH_PROFILE.len() - 1 {
        let (a, b, c, d) = (2 * k, 2 * k + 1, 2 * k + 2, 2 * k + 3);
        triangles.push([a, c, d]);
        triangles.push([a, d, b]);
    }
    Scenario {
        name: "trench",
        mesh: SurfaceMesh::new(vertices, triangles).expect("trench mesh"),
        p_init: Vec3::new(0.0, 0.0, 0.0),
        d_init: Vec3::x(),
        tape_length: 0.15,
        config: PlannerConfig {
            concave_mode: true,
            penetration_counts_as_contact: false,
            ..PlannerConfig::default()
        },
    }
}

/// Unit direction in the tangent plane at the surface point nearest `p`,
/// at `angle` radians from a fixed reference tangent.
pub fn tangent_direction(mesh: &SurfaceMesh, p: &Vec3, angle: f64) -> Vec3 {
    let n = mesh.closest_point(p).expect("non-empty mesh").normal;
    let helper = if n.x.abs() < 0.9 {
        Vec3::x()
    } else {
        Vec3::y()
    };
    let t1 = (helper - n * n.dot(&helper)).normalize();
    let t2 = n.cross(&t1);
    t1 * angle.cos() + t2 * angle.sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trench_normals_face_up() {
        let s = trench();
        assert!(s
            .mesh
            .normals()
            .iter()
            .all(|n| n.z > 0.0 || n.x.abs() > 0.99));
        assert!(!s.mesh.is_convex(1e-7));
    }

    #[test]
    fn tangent_direction_is_tangent() {
        let s = hip();
        for k in 0..8 {
            let d = tangent_direction(&s.mesh, &s.p_init, k as f64);
            let n = s.mesh.closest_point(&s.p_init).unwrap().normal;
            assert!(d.dot(&n).abs() < 1e-12);
            assert!((d.norm() - 1.0).abs() < 1e-12);
        }
    }
}
