//! Pivot-and-rotate tape placement.
//!
//! Both tape ends are handled by the same side-step: the free segment is
//! re-placed from the pivot with the side's accumulated rotation; if the next
//! element now touches the surface the adhesion front advances, otherwise the
//! free segment is rotated by one angle step about an axis tangent to the
//! surface at the pivot. The driver alternates end and start sides and records
//! both gripper poses and pulling directions after every iteration.

mod config;
mod init;
mod plan;
mod step;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use config::PlannerConfig;
pub use init::{initial_axis, initialize_tape};
pub use plan::{
    apply_residual, plan_bimanual, plan_single_sided, PlacementPlan, PlanMode, PlanRecord,
    PlanStatus, Pose,
};
pub use step::{step_side, step_side_concave, StepReport};

/// Normal cross products shorter than this are treated as parallel normals.
pub const AXIS_DEGENERACY: f64 = 1e-9;

/// Initial directions whose tangent projection is shorter than this are
/// considered parallel to the surface normal.
pub const MIN_TANGENT_NORM: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlannerError {
    #[error("invalid planner config: {0}")]
    InvalidConfig(String),
    #[error("initial direction is parallel to the surface normal (tangent component {0:e})")]
    InvalidDirection(f64),
    #[error("tape length {length} m is shorter than three elements ({min} m)")]
    TapeTooShort { length: f64, min: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
