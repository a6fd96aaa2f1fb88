use serde::{Deserialize, Serialize};

use super::init::{initialize_with_anchor, Anchor};
use super::{step_side, step_side_concave, PlannerConfig, PlannerError};
use crate::geometry::{try_normalize, Rot3, SurfaceMesh, Vec3};
use crate::tape::{Side, TapeState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub position: Vec3,
    pub rotation: Rot3,
}

/// Gripper poses and pulling directions after one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanRecord {
    pub iteration: usize,
    pub start: Pose,
    pub end: Pose,
    /// Unit vector from the start-side pivot to element 0; zero once that side is done.
    pub tension_start: Vec3,
    /// Unit vector from the end-side pivot to element N−1; zero once that side is done.
    pub tension_end: Vec3,
    pub front_start: usize,
    pub front_end: usize,
}

impl PlanRecord {
    pub fn pose(&self, side: Side) -> &Pose {
        match side {
            Side::Start => &self.start,
            Side::End => &self.end,
        }
    }

    pub fn pose_mut(&mut self, side: Side) -> &mut Pose {
        match side {
            Side::Start => &mut self.start,
            Side::End => &mut self.end,
        }
    }

    pub fn tension(&self, side: Side) -> Vec3 {
        match side {
            Side::Start => self.tension_start,
            Side::End => self.tension_end,
        }
    }

    pub fn front(&self, side: Side) -> usize {
        match side {
            Side::Start => self.front_start,
            Side::End => self.front_end,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanStatus {
    Complete,
    MaxIterationsExceeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanMode {
    Bimanual,
    SingleSided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlacementPlan {
    pub records: Vec<PlanRecord>,
    pub final_state: TapeState,
    pub status: PlanStatus,
    pub mode: PlanMode,
    pub config: PlannerConfig,
    /// Total offset already added by [`apply_residual`]; zero for a raw plan.
    pub residual_offset: f64,
}

impl PlacementPlan {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn is_complete(&self) -> bool {
        self.status == PlanStatus::Complete
    }

    /// Attached element positions from the start front to the end front.
    pub fn attached_centerline(&self) -> Vec<Vec3> {
        self.final_state
            .attached_range()
            .map(|j| self.final_state.elements[j].position)
            .collect()
    }
}

/// Places the middle of the tape at `p_init` and lays both halves down
/// symmetrically until every element is attached or the budget runs out.
pub fn plan_bimanual(
    mesh: &SurfaceMesh,
    p_init: &Vec3,
    d_init: &Vec3,
    tape_length: f64,
    cfg: &PlannerConfig,
) -> Result<PlacementPlan, PlannerError> {
    let state = initialize_with_anchor(mesh, p_init, d_init, tape_length, cfg, Anchor::Middle)?;
    run(state, mesh, cfg, PlanMode::Bimanual)
}

/// Single-arm variant: element 0 is stuck at `p_init` and only the end side
/// is laid down.
pub fn plan_single_sided(
    mesh: &SurfaceMesh,
    p_init: &Vec3,
    d_init: &Vec3,
    tape_length: f64,
    cfg: &PlannerConfig,
) -> Result<PlacementPlan, PlannerError> {
    let state = initialize_with_anchor(mesh, p_init, d_init, tape_length, cfg, Anchor::First)?;
    run(state, mesh, cfg, PlanMode::SingleSided)
}

fn run(
    mut state: TapeState,
    mesh: &SurfaceMesh,
    cfg: &PlannerConfig,
    mode: PlanMode,
) -> Result<PlacementPlan, PlannerError> {
    let budget = cfg.iteration_budget(state.len());
    let mut records = Vec::new();
    let mut status = PlanStatus::Complete;
    while !(state.is_complete(Side::Start) && state.is_complete(Side::End)) {
        if records.len() >= budget {
            status = PlanStatus::MaxIterationsExceeded;
            log::warn!(
                "iteration budget of {budget} exhausted with fronts at ({}, {})",
                state.i_start,
                state.i_end
            );
            break;
        }
        for side in Side::BOTH {
            if cfg.concave_mode {
                step_side_concave(&mut state, mesh, cfg, side)?;
            } else {
                step_side(&mut state, mesh, cfg, side)?;
            }
        }
        records.push(record(&state, records.len()));
    }
    log::debug!(
        "{mode:?} plan finished after {} iterations: {status:?}",
        records.len()
    );
    Ok(PlacementPlan {
        records,
        final_state: state,
        status,
        mode,
        config: *cfg,
        residual_offset: 0.0,
    })
}

fn record(state: &TapeState, iteration: usize) -> PlanRecord {
    let tension = |side: Side| {
        let tail = state.elements[state.tail(side)].position;
        let pivot = state.elements[state.front(side)].position;
        if state.is_complete(side) {
            Vec3::zeros()
        } else {
            try_normalize(&(tail - pivot), f64::MIN_POSITIVE).unwrap_or_else(Vec3::zeros)
        }
    };
    PlanRecord {
        iteration,
        start: Pose {
            position: state.elements[state.tail(Side::Start)].position,
            rotation: state.rot_start,
        },
        end: Pose {
            position: state.elements[state.tail(Side::End)].position,
            rotation: state.rot_end,
        },
        tension_start: tension(Side::Start),
        tension_end: tension(Side::End),
        front_start: state.i_start,
        front_end: state.i_end,
    }
}

/// Shifts every recorded gripper position by `cfg.residual_distance` along
/// its own tension direction. Records whose side is finished (zero tension)
/// are left in place.
pub fn apply_residual(
    plan: &PlacementPlan,
    cfg: &PlannerConfig,
) -> Result<PlacementPlan, PlannerError> {
    let d = cfg.residual_distance;
    if !(d.is_finite() && d >= 0.0) {
        return Err(PlannerError::InvalidConfig(format!(
            "residual_distance must be >= 0, got {d}"
        )));
    }
    let mut out = plan.clone();
    if d == 0.0 {
        return Ok(out);
    }
    for rec in &mut out.records {
        for side in Side::BOTH {
            let t = rec.tension(side);
            rec.pose_mut(side).position += t * d;
        }
    }
    out.residual_offset += d;
    Ok(out)
}
