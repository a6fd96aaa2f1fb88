use super::{PlannerConfig, PlannerError, AXIS_DEGENERACY};
use crate::geometry::{rodrigues, try_normalize, SurfaceMesh, Vec3};
use crate::tape::{adhered, Side, TapeState};

/// Outcome of one side-step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepReport {
    /// The front moved from `from` to `to` (more than one element only in concave mode).
    Advanced { from: usize, to: usize },
    /// The free segment was rotated by one angle step about `axis`;
    /// `pivot_normal` is the surface normal at the pivot.
    Rotated { axis: Vec3, pivot_normal: Vec3 },
    /// The side has no free elements left.
    Done,
}

/// One iteration for one side, convex-surface version: only the element
/// next to the pivot is tested for contact.
pub fn step_side(
    state: &mut TapeState,
    mesh: &SurfaceMesh,
    cfg: &PlannerConfig,
    side: Side,
) -> Result<StepReport, PlannerError> {
    step(state, mesh, cfg, side, false)
}

/// Concave-surface variant: when the next element is not in contact, every
/// other free element is tested and the front jumps to the furthest one that
/// is, projecting the skipped elements onto the surface.
pub fn step_side_concave(
    state: &mut TapeState,
    mesh: &SurfaceMesh,
    cfg: &PlannerConfig,
    side: Side,
) -> Result<StepReport, PlannerError> {
    step(state, mesh, cfg, side, true)
}

fn step(
    state: &mut TapeState,
    mesh: &SurfaceMesh,
    cfg: &PlannerConfig,
    side: Side,
    scan_all: bool,
) -> Result<StepReport, PlannerError> {
    if state.is_complete(side) {
        return Ok(StepReport::Done);
    }
    let front = state.front(side);
    let rot = state.rotation(side);
    let pivot = state.elements[front].position;
    let pivot_init = state.elements[front].initial_position;
    let free = state.free_indices(side);
    for &j in &free {
        let el = &mut state.elements[j];
        el.position = pivot + rot.apply(&(el.initial_position - pivot_init));
        el.orientation = rot;
    }

    let params = cfg.adhesion();
    let next = free[0];
    let next_contact = mesh.closest_point(&state.elements[next].position)?;
    let mut target = None;
    if adhered(&next_contact, &params) {
        target = Some(0);
    } else if scan_all {
        for (k, &j) in free.iter().enumerate().skip(1).rev() {
            if adhered(&mesh.closest_point(&state.elements[j].position)?, &params) {
                target = Some(k);
                break;
            }
        }
    }
    if let Some(last) = target {
        for &j in &free[..=last] {
            let el = &mut state.elements[j];
            el.position = mesh.closest_point(&el.position)?.position;
            el.attached = true;
        }
        state.set_front(side, free[last]);
        return Ok(StepReport::Advanced {
            from: front,
            to: free[last],
        });
    }

    let pivot_normal = mesh.closest_point(&pivot)?.normal;
    let past_mid = match side {
        Side::End => front > state.i_mid,
        Side::Start => front < state.i_mid,
    };
    if past_mid {
        let inner = match side {
            Side::End => front - 1,
            Side::Start => front + 1,
        };
        let n_prev = mesh.closest_point(&state.elements[inner].position)?.normal;
        let cross = n_prev.cross(&pivot_normal);
        let tail = state.elements[state.tail(side)].position;
        let tangent_axis = try_normalize(&pivot_normal.cross(&(tail - pivot)), AXIS_DEGENERACY);
        let next_pos = state.elements[next].position;
        let new_axis = if cross.norm() >= AXIS_DEGENERACY {
            let candidate = cross.normalize();
            let trial = pivot + rodrigues(&candidate, cfg.angle_step)?.apply(&(next_pos - pivot));
            if mesh.closest_point(&trial)?.signed_distance < next_contact.signed_distance {
                Some(candidate)
            } else {
                // the next element's circle about this axis has passed the
                // surface without touching it
                log::trace!(
                    "{} side: normal-pair axis stalls at element {next}",
                    side.name()
                );
                tangent_axis.or(Some(candidate))
            }
        } else {
            // parallel normals: tip the free segment straight down onto the
            // pivot's tangent plane, as at initialization
            tangent_axis
        };
        if let Some(a) = new_axis {
            *state.axis_mut(side) = a;
        }
    }
    let axis = state.axis(side);
    let delta = rodrigues(&axis, cfg.angle_step)?;
    let acc = state.rotation_mut(side);
    *acc = delta * *acc;
    Ok(StepReport::Rotated { axis, pivot_normal })
}
