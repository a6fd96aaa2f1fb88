//! JSON trajectory files.
//!
//! One file holds a whole [`PlacementPlan`]: the planner config, one record
//! per iteration with both gripper poses (rotations as unit quaternions
//! `[w, x, y, z]`) and pulling directions, and the final tape elements.
//! Output is deterministic; the only non-reproducible field is the optional
//! `header.timestamp`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{to_array, vec3, Rot3};
use crate::planner::{PlacementPlan, PlanMode, PlanRecord, PlanStatus, PlannerConfig, Pose};
use crate::tape::{TapeElement, TapeState};

pub const FORMAT_NAME: &str = "tapewrap-trajectory";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TrajectoryError {
    #[error("trajectory file not found: {0}")]
    FileNotFound(PathBuf),
    #[error(transparent)]
    IoError(#[from] std::io::Error),
    #[error("malformed trajectory JSON: {0}")]
    FormatError(#[from] serde_json::Error),
    #[error("invalid trajectory: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoseJson {
    pub p: [f64; 3],
    pub q: [f64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordJson {
    pub i: usize,
    pub start: PoseJson,
    pub end: PoseJson,
    pub tension_start: [f64; 3],
    pub tension_end: [f64; 3],
    pub front_start: usize,
    pub front_end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub p: [f64; 3],
    pub q: [f64; 4],
    pub attached: bool,
    pub init: [f64; 3],
}

/// Side rotations and axes at the end of planning.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalJson {
    pub rot_start: [f64; 4],
    pub rot_end: [f64; 4],
    pub axis_start: [f64; 3],
    pub axis_end: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryFile {
    pub header: Header,
    pub config: PlannerConfig,
    pub mode: PlanMode,
    pub status: PlanStatus,
    pub iterations: usize,
    pub element_count: usize,
    pub i_mid: usize,
    pub tape_length: f64,
    pub element_length: f64,
    pub width: f64,
    pub residual_offset: f64,
    pub records: Vec<RecordJson>,
    #[serde(rename = "final")]
    pub final_state: FinalJson,
    pub elements: Vec<ElementJson>,
}

fn pose_json(p: &Pose) -> PoseJson {
    PoseJson {
        p: to_array(&p.position),
        q: p.rotation.to_quaternion(),
    }
}

fn pose_from(p: &PoseJson) -> Pose {
    Pose {
        position: vec3(p.p),
        rotation: Rot3::from_quaternion(p.q),
    }
}

impl TrajectoryFile {
    pub fn from_plan(plan: &PlacementPlan, timestamp: Option<String>) -> Self {
        let s = &plan.final_state;
        TrajectoryFile {
            header: Header {
                format: FORMAT_NAME.to_string(),
                version: FORMAT_VERSION,
                timestamp,
            },
            config: plan.config,
            mode: plan.mode,
            status: plan.status,
            iterations: plan.iterations(),
            element_count: s.len(),
            i_mid: s.i_mid,
            tape_length: s.tape_length,
            element_length: s.element_length,
            width: s.width,
            residual_offset: plan.residual_offset,
            records: plan
                .records
                .iter()
                .map(|r| RecordJson {
                    i: r.iteration,
                    start: pose_json(&r.start),
                    end: pose_json(&r.end),
                    tension_start: to_array(&r.tension_start),
                    tension_end: to_array(&r.tension_end),
                    front_start: r.front_start,
                    front_end: r.front_end,
                })
                .collect(),
            final_state: FinalJson {
                rot_start: s.rot_start.to_quaternion(),
                rot_end: s.rot_end.to_quaternion(),
                axis_start: to_array(&s.axis_start),
                axis_end: to_array(&s.axis_end),
            },
            elements: s
                .elements
                .iter()
                .map(|e| ElementJson {
                    p: to_array(&e.position),
                    q: e.orientation.to_quaternion(),
                    attached: e.attached,
                    init: to_array(&e.initial_position),
                })
                .collect(),
        }
    }

    /// Rebuilds the plan. Rotations come back through quaternions, so they
    /// match the originals to rounding error rather than bit for bit.
    pub fn into_plan(self) -> Result<PlacementPlan, TrajectoryError> {
        if self.header.format != FORMAT_NAME {
            return Err(TrajectoryError::Invalid(format!(
                "unknown format {:?}",
                self.header.format
            )));
        }
        if self.header.version != FORMAT_VERSION {
            return Err(TrajectoryError::Invalid(format!(
                "unsupported version {}",
                self.header.version
            )));
        }
        let n = self.elements.len();
        if n != self.element_count || n < 3 || self.i_mid >= n {
            return Err(TrajectoryError::Invalid(format!(
                "{n} elements listed, header says {} with middle {}",
                self.element_count, self.i_mid
            )));
        }
        if self.records.len() != self.iterations {
            return Err(TrajectoryError::Invalid(format!(
                "{} records listed, header says {}",
                self.records.len(),
                self.iterations
            )));
        }
        let all_finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        let mut records = Vec::with_capacity(self.records.len());
        for (k, r) in self.records.iter().enumerate() {
            if r.i != k {
                return Err(TrajectoryError::Invalid(format!(
                    "record {k} is numbered {}",
                    r.i
                )));
            }
            if r.front_start > self.i_mid || r.front_end < self.i_mid || r.front_end >= n {
                return Err(TrajectoryError::Invalid(format!(
                    "record {k}: fronts ({}, {}) out of range",
                    r.front_start, r.front_end
                )));
            }
            let values = [
                &r.start.p[..],
                &r.start.q,
                &r.end.p,
                &r.end.q,
                &r.tension_start,
                &r.tension_end,
            ];
            if !values.iter().all(|v| all_finite(v)) {
                return Err(TrajectoryError::Invalid(format!(
                    "record {k} contains non-finite values"
                )));
            }
            records.push(PlanRecord {
                iteration: r.i,
                start: pose_from(&r.start),
                end: pose_from(&r.end),
                tension_start: vec3(r.tension_start),
                tension_end: vec3(r.tension_end),
                front_start: r.front_start,
                front_end: r.front_end,
            });
        }
        let elements = self
            .elements
            .iter()
            .map(|e| TapeElement {
                position: vec3(e.p),
                orientation: Rot3::from_quaternion(e.q),
                attached: e.attached,
                initial_position: vec3(e.init),
            })
            .collect();
        let (i_start, i_end) = records
            .last()
            .map(|r| (r.front_start, r.front_end))
            .unwrap_or((self.i_mid, self.i_mid));
        let final_state = TapeState {
            elements,
            i_mid: self.i_mid,
            i_start,
            i_end,
            rot_start: Rot3::from_quaternion(self.final_state.rot_start),
            rot_end: Rot3::from_quaternion(self.final_state.rot_end),
            axis_start: vec3(self.final_state.axis_start),
            axis_end: vec3(self.final_state.axis_end),
            element_length: self.element_length,
            tape_length: self.tape_length,
            width: self.width,
        };
        Ok(PlacementPlan {
            records,
            final_state,
            status: self.status,
            mode: self.mode,
            config: self.config,
            residual_offset: self.residual_offset,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trajectory serializes");
        s.push('\n');
        s
    }
}

pub fn write_trajectory(
    plan: &PlacementPlan,
    path: impl AsRef<Path>,
    timestamp: Option<String>,
) -> Result<(), TrajectoryError> {
    std::fs::write(path, TrajectoryFile::from_plan(plan, timestamp).to_json())?;
    Ok(())
}

pub fn read_trajectory(path: impl AsRef<Path>) -> Result<PlacementPlan, TrajectoryError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => TrajectoryError::FileNotFound(path.to_path_buf()),
        _ => TrajectoryError::IoError(e),
    })?;
    let file: TrajectoryFile = serde_json::from_str(&text)?;
    file.into_plan()
}

/// Seconds since the Unix epoch, for the optional header timestamp.
pub fn unix_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{secs}")
}
