use super::{PlannerConfig, PlannerError, AXIS_DEGENERACY, MIN_TANGENT_NORM};
use crate::geometry::{try_normalize, Rot3, SurfaceMesh, Vec3};
use crate::tape::{TapeElement, TapeState, DEFAULT_TAPE_WIDTH};

/// Lays the tape out straight through the surface point nearest `p_init`,
/// along `d_init` projected into that point's tangent plane. Only the middle
/// element `⌊N/2⌋` starts attached.
pub fn initialize_tape(
    mesh: &SurfaceMesh,
    p_init: &Vec3,
    d_init: &Vec3,
    tape_length: f64,
    cfg: &PlannerConfig,
) -> Result<TapeState, PlannerError> {
    initialize_with_anchor(mesh, p_init, d_init, tape_length, cfg, Anchor::Middle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Anchor {
    /// Bimanual: the middle element is placed first.
    Middle,
    /// Single arm: element 0 is placed first and never moves.
    First,
}

pub(crate) fn initialize_with_anchor(
    mesh: &SurfaceMesh,
    p_init: &Vec3,
    d_init: &Vec3,
    tape_length: f64,
    cfg: &PlannerConfig,
    anchor: Anchor,
) -> Result<TapeState, PlannerError> {
    cfg.validate()?;
    let min = 3.0 * cfg.element_length;
    if !(tape_length.is_finite() && tape_length >= min) {
        return Err(PlannerError::TapeTooShort {
            length: tape_length,
            min,
        });
    }
    let d = try_normalize(d_init, f64::MIN_POSITIVE).ok_or(PlannerError::InvalidDirection(0.0))?;

    let snapped = mesh.closest_point(p_init)?.position;
    let normal = mesh.closest_point(&snapped)?.normal;
    let tangent = d - normal * normal.dot(&d);
    let d = try_normalize(&tangent, MIN_TANGENT_NORM)
        .ok_or(PlannerError::InvalidDirection(tangent.norm()))?;

    let n = cfg.element_count(tape_length);
    let i_mid = match anchor {
        Anchor::Middle => n / 2,
        Anchor::First => 0,
    };
    let elements = (0..n)
        .map(|j| {
            let offset = j as f64 - i_mid as f64;
            let p = snapped + d * (offset * cfg.element_length);
            TapeElement {
                position: p,
                orientation: Rot3::identity(),
                attached: j == i_mid,
                initial_position: p,
            }
        })
        .collect();
    let (axis_start, axis_end) = initial_axis(mesh, &snapped, &d)?;

    Ok(TapeState {
        elements,
        i_mid,
        i_start: i_mid,
        i_end: i_mid,
        rot_start: Rot3::identity(),
        rot_end: Rot3::identity(),
        axis_start,
        axis_end,
        element_length: cfg.element_length,
        tape_length,
        width: DEFAULT_TAPE_WIDTH,
    })
}

/// Initial rotation axes `(v_s, v_e)`: `v_e = n × d`, `v_s = −v_e`, with `n`
/// the surface normal at `p_mid`. A positive rotation about `v_e` tips the
/// end-side tail (along `+d`) toward `−n`, and likewise for the start side.
pub fn initial_axis(
    mesh: &SurfaceMesh,
    p_mid: &Vec3,
    d_init: &Vec3,
) -> Result<(Vec3, Vec3), PlannerError> {
    let n = mesh.closest_point(p_mid)?.normal;
    let cross = n.cross(d_init);
    let v_e = try_normalize(&cross, AXIS_DEGENERACY)
        .ok_or(PlannerError::InvalidDirection(cross.norm()))?;
    Ok((-v_e, v_e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rodrigues;
    use crate::mesh_io::{generate_mesh, MeshSpec};

    fn plane() -> SurfaceMesh {
        generate_mesh(&MeshSpec::plane(0.3, 0.3)).unwrap()
    }

    #[test]
    fn plane_layout() {
        let cfg = PlannerConfig::default();
        let s =
            initialize_tape(&plane(), &Vec3::new(0.0, 0.0, 0.01), &Vec3::x(), 0.15, &cfg).unwrap();
        assert_eq!(s.len(), 30);
        assert_eq!(s.i_mid, 15);
        assert_eq!((s.i_start, s.i_end), (15, 15));
        assert_eq!(s.elements[15].position, Vec3::zeros());
        assert!(s.elements.iter().all(|e| e.position.z == 0.0));
        assert!(s
            .elements
            .iter()
            .enumerate()
            .all(|(j, e)| e.attached == (j == 15)));
        assert_eq!(s.axis_end, Vec3::y());
        assert_eq!(s.axis_start, -Vec3::y());
    }

    #[test]
    fn direction_along_normal_rejected() {
        let cfg = PlannerConfig::default();
        let e = initialize_tape(&plane(), &Vec3::new(0.0, 0.0, 0.01), &Vec3::z(), 0.15, &cfg)
            .unwrap_err();
        assert!(matches!(e, PlannerError::InvalidDirection(_)));
        let e = initialize_tape(&plane(), &Vec3::zeros(), &Vec3::zeros(), 0.15, &cfg).unwrap_err();
        assert!(matches!(e, PlannerError::InvalidDirection(_)));
    }

    #[test]
    fn short_tape_rejected() {
        let cfg = PlannerConfig::default();
        let e = initialize_tape(&plane(), &Vec3::zeros(), &Vec3::x(), 0.012, &cfg).unwrap_err();
        assert!(matches!(e, PlannerError::TapeTooShort { .. }));
    }

    #[test]
    fn tilted_direction_is_projected() {
        let cfg = PlannerConfig::default();
        let d = Vec3::new(1.0, 0.0, 0.5);
        let s = initialize_tape(&plane(), &Vec3::zeros(), &d, 0.15, &cfg).unwrap();
        let dir = (s.elements[16].position - s.elements[15].position).normalize();
        assert!((dir - Vec3::x()).norm() < 1e-15);
    }

    /// Tail height after rotating the unit offset `d` by `angle` about `axis`.
    fn tail_height(axis: &Vec3, d: &Vec3, angle: f64) -> f64 {
        rodrigues(axis, angle).unwrap().apply(d).z
    }

    #[test]
    fn initial_axis_descends_for_both_sides() {
        let m = plane();
        let step = 0.5_f64.to_radians();
        for d in [Vec3::x(), Vec3::y(), Vec3::new(0.6, -0.8, 0.0)] {
            let (v_s, v_e) = initial_axis(&m, &Vec3::zeros(), &d).unwrap();
            assert!(tail_height(&v_e, &d, step) < 0.0);
            assert!(tail_height(&v_s, &-d, step) < 0.0);
            // opposite sense raises the tail
            assert!(tail_height(&v_e, &d, -step) > 0.0);
            // closed form: d cos θ − n sin θ
            let rotated = rodrigues(&v_e, step).unwrap().apply(&d);
            assert!((rotated - (d * step.cos() - Vec3::z() * step.sin())).norm() < 1e-15);
        }
        let (_, v_e) = initial_axis(&m, &Vec3::zeros(), &Vec3::y()).unwrap();
        assert_eq!(v_e, -Vec3::x());
    }

    #[test]
    fn cylinder_neighbors_sit_off_surface() {
        let spec = MeshSpec::cylinder(0.05, 0.4).with_resolution(32);
        let mesh = generate_mesh(&spec).unwrap();
        let cfg = PlannerConfig::default();
        // mid-facet azimuth, where the facet normal is radial
        let a = std::f64::consts::PI / 128.0;
        let p = Vec3::new(0.05 * a.cos(), 0.05 * a.sin(), 0.0);
        let s = initialize_tape(&mesh, &p, &Vec3::new(-a.sin(), a.cos(), 0.0), 0.15, &cfg).unwrap();
        let mid = s.elements[s.i_mid].position;
        assert!((mid.xy().norm() - 0.05).abs() <= spec.chordal_tolerance());
        // neighbor on the tangent line: sqrt(r² + l_e²) − r
        let analytic = (0.05_f64.powi(2) + 0.005_f64.powi(2)).sqrt() - 0.05;
        for j in [s.i_mid - 1, s.i_mid + 1] {
            let d = mesh
                .closest_point(&s.elements[j].position)
                .unwrap()
                .distance();
            assert!(
                (d - analytic).abs() <= 2.0 * spec.chordal_tolerance(),
                "{d} vs {analytic}"
            );
        }
    }
}
