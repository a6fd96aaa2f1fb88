//! OBJ scene export: the surface, a ribbon of the tape's width along the
//! attached centerline, and optional line snapshots of the free segments.

use std::fmt::Write as _;
use std::path::Path;

use crate::geometry::{try_normalize, GeometryError, SurfaceMesh, Vec3};
use crate::mesh_io::write_obj_body;
use crate::planner::PlacementPlan;
use crate::tape::{Side, DEFAULT_TAPE_WIDTH};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SceneOptions {
    /// Ribbon width (m).
    pub width: f64,
    /// Emit a free-segment snapshot every this many records.
    pub snapshot_every: Option<usize>,
}

impl Default for SceneOptions {
    fn default() -> Self {
        SceneOptions {
            width: DEFAULT_TAPE_WIDTH,
            snapshot_every: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub obj: String,
    /// Ribbon edge vertices `(left, right)` per attached element.
    pub ribbon: Vec<(Vec3, Vec3)>,
    pub snapshots: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    IoError(#[from] std::io::Error),
}

pub fn build_scene(
    plan: &PlacementPlan,
    mesh: &SurfaceMesh,
    opts: &SceneOptions,
) -> Result<Scene, SceneError> {
    let mut obj = String::from("# tapewrap scene\no surface\n");
    write_obj_body(&mut obj, mesh, 0);
    let mut base = mesh.vertices().len();
    let mut warnings = Vec::new();

    let centerline = plan.attached_centerline();
    let mut ribbon = Vec::new();
    if centerline.len() < 2 {
        let msg = format!(
            "only {} attached element(s); ribbon omitted",
            centerline.len()
        );
        log::warn!("{msg}");
        warnings.push(msg);
    } else {
        let half = 0.5 * opts.width;
        let last = centerline.len() - 1;
        for (k, c) in centerline.iter().enumerate() {
            let t = centerline[(k + 1).min(last)] - centerline[k.saturating_sub(1)];
            let n = mesh.closest_point(c)?.normal;
            let b = try_normalize(&n.cross(&t), 1e-12)
                .unwrap_or_else(|| n.cross(&Vec3::x()).normalize());
            ribbon.push((c + b * half, c - b * half));
        }
        obj.push_str("o ribbon\n");
        for (l, r) in &ribbon {
            writeln!(obj, "v {} {} {}", l.x, l.y, l.z).unwrap();
            writeln!(obj, "v {} {} {}", r.x, r.y, r.z).unwrap();
        }
        for k in 0..last {
            // 1-based OBJ indices of left/right at k and k+1
            let (l0, r0) = (base + 2 * k + 1, base + 2 * k + 2);
            let (l1, r1) = (l0 + 2, r0 + 2);
            writeln!(obj, "f {r0} {r1} {l1}").unwrap();
            writeln!(obj, "f {r0} {l1} {l0}").unwrap();
        }
        base += 2 * ribbon.len();
    }

    let mut snapshots = 0;
    if let Some(every) = opts.snapshot_every.filter(|&e| e > 0) {
        let state = &plan.final_state;
        for rec in plan.records.iter().step_by(every) {
            for side in Side::BOTH {
                let t = rec.tension(side);
                if t == Vec3::zeros() {
                    continue;
                }
                let pivot = state.elements[rec.front(side)].position;
                let grip = rec.pose(side).position - t * plan.residual_offset;
                writeln!(obj, "o free_{}_{:05}", side.name(), rec.iteration).unwrap();
                writeln!(obj, "v {} {} {}", pivot.x, pivot.y, pivot.z).unwrap();
                writeln!(obj, "v {} {} {}", grip.x, grip.y, grip.z).unwrap();
                writeln!(obj, "l {} {}", base + 1, base + 2).unwrap();
                base += 2;
                snapshots += 1;
            }
        }
    }

    Ok(Scene {
        obj,
        ribbon,
        snapshots,
        warnings,
    })
}

pub fn export_scene(
    plan: &PlacementPlan,
    mesh: &SurfaceMesh,
    opts: &SceneOptions,
    path: impl AsRef<Path>,
) -> Result<Scene, SceneError> {
    let scene = build_scene(plan, mesh, opts)?;
    std::fs::write(path, &scene.obj)?;
    Ok(scene)
}
