//! Independent audit of placement plans.
//!
//! [`verify_plan`] rebuilds every free segment from the recorded gripper
//! rotations and the final attached positions, then re-evaluates the tape
//! constraints on that reconstruction. Planner flags such as
//! [`TapeElement::attached`](crate::tape::TapeElement) are never consulted.

mod oracle;
mod report;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{try_normalize, GeometryError, Rot3, SurfaceMesh, Vec3};
use crate::planner::{PlacementPlan, PlanStatus, PlannerConfig, PlannerError};
use crate::tape::{polyline_slack, Side};

pub use oracle::{refinement_oracle, OracleComparison};
pub use report::{emit_report, render_text, ReportFormat};

/// Bound on `|RᵀR − I|` and `|det R − 1|` for recorded rotations.
pub const ORTHONORMALITY_TOL: f64 = 1e-9;
/// Bound on the mismatch between a recorded pose and its replay.
pub const REPLAY_TOL: f64 = 1e-9;

/// Label attached to every report's coverage figure.
pub const COVERAGE_NOTE: &str =
    "kinematic coverage: share of elements whose final position lies within epsilon of the mesh";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("plan does not match mesh or config: {0}")]
    InconsistentPlan(String),
    #[error("{plan} plan did not complete ({status:?})")]
    OracleFailed {
        plan: &'static str,
        status: PlanStatus,
    },
    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),
    #[error(transparent)]
    Planner(#[from] PlannerError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("cannot write report: {0}")]
    IoError(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on `|c_length|` over attached joints (m).
    pub length_tol: f64,
    /// Bound on `|axis · n|` for every rotation step.
    pub wrinkle_tol: f64,
    /// Bound on `|c_tension|` for every replayed free segment (m).
    pub tension_tol: f64,
    /// Minimum coverage in percent.
    pub coverage_min: f64,
}

impl Tolerances {
    /// Defaults for a plan made with `cfg`: length `2ε`, wrinkle `1e-9`,
    /// tension `1e-7`, full coverage.
    pub fn for_config(cfg: &PlannerConfig) -> Self {
        Tolerances {
            length_tol: 2.0 * cfg.epsilon,
            wrinkle_tol: 1e-9,
            tension_tol: 1e-7,
            coverage_min: 100.0,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let fields = [
            ("length_tol", self.length_tol),
            ("wrinkle_tol", self.wrinkle_tol),
            ("tension_tol", self.tension_tol),
            ("coverage_min", self.coverage_min),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(VerifyError::InvalidTolerances(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::for_config(&PlannerConfig::default())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub coverage_percent: f64,
    pub coverage_note: String,
    pub status: PlanStatus,
    pub iterations: usize,
    pub element_count: usize,
    pub adhered_elements: usize,
    pub worst_length_residual: f64,
    pub worst_length_joint: Option<usize>,
    pub worst_wrinkle_residual: f64,
    pub worst_wrinkle_iteration: Option<usize>,
    pub worst_tension_residual: f64,
    pub worst_tension_iteration: Option<usize>,
    pub max_trajectory_step: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Largest value seen so far and where.
#[derive(Clone, Copy, Default)]
struct Worst {
    value: f64,
    at: Option<usize>,
}

impl Worst {
    fn update(&mut self, value: f64, at: usize) {
        if value > self.value || self.at.is_none() {
            self.value = value;
            self.at = Some(at);
        }
    }
}

/// Per-side results of replaying the recorded trajectory.
#[derive(Default)]
struct Replay {
    pose_error: f64,
    direction_error: f64,
    tension: Worst,
    wrinkle: Worst,
    rotation_step_error: f64,
    orthonormality: f64,
    front_violations: usize,
    max_step: f64,
}

impl Replay {
    fn merge(&mut self, o: Replay) {
        self.pose_error = self.pose_error.max(o.pose_error);
        self.direction_error = self.direction_error.max(o.direction_error);
        if let Some(at) = o.tension.at {
            self.tension.update(o.tension.value, at);
        }
        if let Some(at) = o.wrinkle.at {
            self.wrinkle.update(o.wrinkle.value, at);
        }
        self.rotation_step_error = self.rotation_step_error.max(o.rotation_step_error);
        self.orthonormality = self.orthonormality.max(o.orthonormality);
        self.front_violations += o.front_violations;
        self.max_step = self.max_step.max(o.max_step);
    }
}

/// Audits `plan` against `mesh` and `cfg`. Failed checks are reported in the
/// result; an `Err` means the plan cannot belong to this mesh/config at all.
pub fn verify_plan(
    plan: &PlacementPlan,
    mesh: &SurfaceMesh,
    cfg: &PlannerConfig,
    tol: &Tolerances,
) -> Result<VerificationReport, VerifyError> {
    tol.validate()?;
    let state = &plan.final_state;
    let n = state.len();
    let expected_n = cfg.element_count(state.tape_length);
    if n < 3 || n != expected_n || state.i_mid >= n {
        return Err(VerifyError::InconsistentPlan(format!(
            "{n} elements for a {} m tape with l_e = {} m (expected {expected_n})",
            state.tape_length, cfg.element_length
        )));
    }
    let (front_start, front_end) = plan
        .records
        .last()
        .map(|r| (r.front_start, r.front_end))
        .unwrap_or((state.i_mid, state.i_mid));
    if front_start > state.i_mid || front_end < state.i_mid || front_end >= n {
        return Err(VerifyError::InconsistentPlan(format!(
            "final fronts ({front_start}, {front_end}) do not bracket element {} of {n}",
            state.i_mid
        )));
    }

    let positions: Vec<Vec3> = state.elements.iter().map(|e| e.position).collect();
    let closest = positions
        .iter()
        .map(|p| mesh.closest_point(p))
        .collect::<Result<Vec<_>, _>>()?;
    for (j, c) in closest
        .iter()
        .enumerate()
        .take(front_end + 1)
        .skip(front_start)
    {
        let d = c.distance();
        if d > 10.0 * cfg.epsilon {
            return Err(VerifyError::InconsistentPlan(format!(
                "element {j} is recorded as attached but lies {d:.3e} m from the mesh"
            )));
        }
    }

    let adhered = closest
        .iter()
        .filter(|c| c.distance() < cfg.epsilon)
        .count();
    let coverage_percent = 100.0 * adhered as f64 / n as f64;

    let mut length = Worst::default();
    for j in front_start + 1..=front_end {
        let r = ((positions[j] - positions[j - 1]).norm() - cfg.element_length).abs();
        length.update(r, j);
    }

    let mut replay = Replay::default();
    for side in Side::BOTH {
        replay.merge(replay_side(plan, &closest, cfg, side)?);
    }

    let unattached = n - (front_end - front_start + 1);
    let continuity_tol = 2.0 * (cfg.angle_step / 2.0).sin() * state.tape_length + cfg.epsilon;
    let checks = vec![
        Check {
            name: "coverage".into(),
            value: coverage_percent,
            tolerance: tol.coverage_min,
            pass: coverage_percent >= tol.coverage_min,
        },
        Check {
            name: "status".into(),
            value: unattached as f64,
            tolerance: 0.0,
            pass: plan.status == PlanStatus::Complete && unattached == 0,
        },
        Check::at_most("length_residual", length.value, tol.length_tol),
        Check::at_most("tension_residual", replay.tension.value, tol.tension_tol),
        Check::at_most("wrinkle_residual", replay.wrinkle.value, tol.wrinkle_tol),
        Check::at_most("rotation_step", replay.rotation_step_error, REPLAY_TOL),
        Check::at_most("front_monotonicity", replay.front_violations as f64, 0.0),
        Check::at_most(
            "pose_orthonormality",
            replay.orthonormality,
            ORTHONORMALITY_TOL,
        ),
        Check::at_most("pose_consistency", replay.pose_error, REPLAY_TOL),
        Check::at_most("tension_direction", replay.direction_error, REPLAY_TOL),
        Check::at_most("trajectory_continuity", replay.max_step, continuity_tol),
    ];
    let pass = checks.iter().all(|c| c.pass);
    if !pass {
        for c in checks.iter().filter(|c| !c.pass) {
            log::info!(
                "check {} failed: {:.3e} against {:.3e}",
                c.name,
                c.value,
                c.tolerance
            );
        }
    }

    Ok(VerificationReport {
        coverage_percent,
        coverage_note: COVERAGE_NOTE.to_string(),
        status: plan.status,
        iterations: plan.iterations(),
        element_count: n,
        adhered_elements: adhered,
        worst_length_residual: length.value,
        worst_length_joint: length.at,
        worst_wrinkle_residual: replay.wrinkle.value,
        worst_wrinkle_iteration: replay.wrinkle.at,
        worst_tension_residual: replay.tension.value,
        worst_tension_iteration: replay.tension.at,
        max_trajectory_step: replay.max_step,
        checks,
        pass,
    })
}

/// Replays one side's records. During iteration `k` the free segment hangs
/// off the front recorded at `k − 1` and is turned by the rotation recorded
/// at `k − 1`; the rotation recorded at `k` is that one plus the step taken.
fn replay_side(
    plan: &PlacementPlan,
    closest: &[crate::geometry::SurfacePoint],
    cfg: &PlannerConfig,
    side: Side,
) -> Result<Replay, VerifyError> {
    let state = &plan.final_state;
    let n = state.len();
    let tail = state.tail(side);
    let pos = |j: usize| state.elements[j].position;
    let init = |j: usize| state.elements[j].initial_position;

    let mut out = Replay::default();
    let mut prev_front = state.i_mid;
    let mut prev_rot = Rot3::identity();
    let mut prev_position: Option<Vec3> = None;

    for rec in &plan.records {
        let k = rec.iteration;
        let front = rec.front(side);
        if front >= n {
            return Err(VerifyError::InconsistentPlan(format!(
                "iteration {k}: front {front} out of range"
            )));
        }
        let moved_back = match side {
            Side::End => front < prev_front,
            Side::Start => front > prev_front,
        };
        if moved_back {
            out.front_violations += 1;
        }
        let pose = rec.pose(side);
        let t = rec.tension(side);
        out.orthonormality = out.orthonormality.max(pose.rotation.orthonormality_error());

        let hinge = |j: usize| pos(prev_front) + prev_rot.apply(&(init(j) - init(prev_front)));
        let live = prev_front != tail;
        let gripper = pose.position - t * plan.residual_offset;
        let expected = if front == tail {
            pos(tail)
        } else {
            hinge(tail)
        };
        out.pose_error = out.pose_error.max((gripper - expected).norm());

        let expected_t = if front == tail {
            Vec3::zeros()
        } else {
            try_normalize(&(expected - pos(front)), f64::MIN_POSITIVE).unwrap_or_else(Vec3::zeros)
        };
        out.direction_error = out.direction_error.max((t - expected_t).norm());

        if live {
            let segment: Vec<Vec3> = side_range(prev_front, tail)
                .map(|j| if j == prev_front { pos(j) } else { hinge(j) })
                .collect();
            out.tension.update(polyline_slack(&segment).abs(), k);
        }

        if live && front == prev_front {
            // a rotation step: exactly δθ about an axis tangent at the pivot
            let delta = pose.rotation * prev_rot.transpose();
            match delta.axis_angle() {
                Some((axis, angle)) => {
                    out.rotation_step_error =
                        out.rotation_step_error.max((angle - cfg.angle_step).abs());
                    out.wrinkle
                        .update(axis.dot(&closest[front].normal).abs(), k);
                }
                None => out.rotation_step_error = out.rotation_step_error.max(cfg.angle_step),
            }
        } else {
            out.rotation_step_error = out
                .rotation_step_error
                .max(pose.rotation.max_abs_diff(&prev_rot));
        }

        if let Some(p) = prev_position {
            out.max_step = out.max_step.max((gripper - p).norm());
        }
        prev_position = Some(gripper);
        prev_front = front;
        prev_rot = pose.rotation;
    }
    Ok(out)
}

/// Indices from `from` to `to` inclusive, in either direction.
fn side_range(from: usize, to: usize) -> Box<dyn Iterator<Item = usize>> {
    if from <= to {
        Box::new(from..=to)
    } else {
        Box::new((to..=from).rev())
    }
}
