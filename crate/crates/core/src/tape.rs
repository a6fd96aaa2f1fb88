//! Discrete tape model and its constraint functionals.
//!
//! The tape is a chain of `N` elements of equal length `l_e`. A contiguous run
//! `[i_s, i_e]` around the middle element is stuck to the surface; on each side
//! the remaining free elements form a rigid straight segment hinged at the
//! outermost attached element (the pivot).

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Rot3, SurfaceMesh, SurfacePoint, Vec3, UNIT_TOL};

/// Default tape width (m). Only used when exporting ribbons.
pub const DEFAULT_TAPE_WIDTH: f64 = 0.025;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Start,
    End,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::End, Side::Start];

    pub fn name(self) -> &'static str {
        match self {
            Side::Start => "start",
            Side::End => "end",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TapeError {
    #[error("joint index {index} out of range 1..{len}")]
    IndexError { index: usize, len: usize },
    #[error("{} side has no free elements", .0.name())]
    NoFreeSegment(Side),
    #[error("expected unit vectors, got norms {0} and {1}")]
    InvalidVector(f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TapeElement {
    pub position: Vec3,
    pub orientation: Rot3,
    pub attached: bool,
    /// Position in the straight initial layout; free elements are placed
    /// relative to this.
    pub initial_position: Vec3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TapeState {
    pub elements: Vec<TapeElement>,
    pub i_mid: usize,
    /// Start-side adhesion front (lowest attached index).
    pub i_start: usize,
    /// End-side adhesion front (highest attached index).
    pub i_end: usize,
    pub rot_start: Rot3,
    pub rot_end: Rot3,
    pub axis_start: Vec3,
    pub axis_end: Vec3,
    pub element_length: f64,
    pub tape_length: f64,
    pub width: f64,
}

impl TapeState {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn front(&self, side: Side) -> usize {
        match side {
            Side::Start => self.i_start,
            Side::End => self.i_end,
        }
    }

    pub(crate) fn set_front(&mut self, side: Side, idx: usize) {
        match side {
            Side::Start => self.i_start = idx,
            Side::End => self.i_end = idx,
        }
    }

    /// Index of the last element on `side` (where the gripper holds the tape).
    pub fn tail(&self, side: Side) -> usize {
        match side {
            Side::Start => 0,
            Side::End => self.len() - 1,
        }
    }

    pub fn rotation(&self, side: Side) -> Rot3 {
        match side {
            Side::Start => self.rot_start,
            Side::End => self.rot_end,
        }
    }

    pub(crate) fn rotation_mut(&mut self, side: Side) -> &mut Rot3 {
        match side {
            Side::Start => &mut self.rot_start,
            Side::End => &mut self.rot_end,
        }
    }

    pub fn axis(&self, side: Side) -> Vec3 {
        match side {
            Side::Start => self.axis_start,
            Side::End => self.axis_end,
        }
    }

    pub(crate) fn axis_mut(&mut self, side: Side) -> &mut Vec3 {
        match side {
            Side::Start => &mut self.axis_start,
            Side::End => &mut self.axis_end,
        }
    }

    pub fn is_complete(&self, side: Side) -> bool {
        self.front(side) == self.tail(side)
    }

    /// Free element indices on `side`, ordered from the pivot outward.
    pub fn free_indices(&self, side: Side) -> Vec<usize> {
        let front = self.front(side);
        match side {
            Side::Start => (0..front).rev().collect(),
            Side::End => (front + 1..self.len()).collect(),
        }
    }

    pub fn attached_range(&self) -> RangeInclusive<usize> {
        self.i_start..=self.i_end
    }

    pub fn attached_count(&self) -> usize {
        self.i_end - self.i_start + 1
    }

    /// Pivot followed by the free elements, pivot first.
    pub fn free_polyline(&self, side: Side) -> Vec<Vec3> {
        std::iter::once(self.front(side))
            .chain(self.free_indices(side))
            .map(|j| self.elements[j].position)
            .collect()
    }
}

/// Adhesion test parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdhesionParams {
    pub epsilon: f64,
    pub penetration_counts_as_contact: bool,
}

/// Inextensibility residual at joint `j`: `‖p_j − p_{j−1}‖ − l_e`.
pub fn c_length(state: &TapeState, j: usize) -> Result<f64, TapeError> {
    if j == 0 || j >= state.len() {
        return Err(TapeError::IndexError {
            index: j,
            len: state.len(),
        });
    }
    let d = (state.elements[j].position - state.elements[j - 1].position).norm();
    Ok(d - state.element_length)
}

/// Slack residual of one side's free segment, including the pivot link.
/// Never positive; zero iff the segment is straight.
pub fn c_tension(state: &TapeState, side: Side) -> Result<f64, TapeError> {
    if state.is_complete(side) {
        return Err(TapeError::NoFreeSegment(side));
    }
    Ok(polyline_slack(&state.free_polyline(side)))
}

/// `‖last − first‖ − Σ‖p_k − p_{k−1}‖` over a polyline.
pub fn polyline_slack(points: &[Vec3]) -> f64 {
    let (Some(first), Some(last)) = (points.first(), points.last()) else {
        return 0.0;
    };
    let path: f64 = points.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
    (last - first).norm() - path
}

/// Wrinkle residual: component of the rotation axis along the pivot normal.
pub fn c_wrinkle(axis: &Vec3, pivot_normal: &Vec3) -> Result<f64, TapeError> {
    let (a, n) = (axis.norm(), pivot_normal.norm());
    if (a - 1.0).abs() > UNIT_TOL || (n - 1.0).abs() > UNIT_TOL {
        return Err(TapeError::InvalidVector(a, n));
    }
    Ok(axis.dot(pivot_normal))
}

/// Contact predicate on an already computed closest point.
pub fn adhered(sp: &SurfacePoint, params: &AdhesionParams) -> bool {
    sp.distance() < params.epsilon
        || (params.penetration_counts_as_contact && sp.signed_distance <= 0.0)
}

/// Whether `p` is close enough to (or, optionally, inside) the surface to stick.
pub fn is_adhered(p: &Vec3, mesh: &SurfaceMesh, params: &AdhesionParams) -> bool {
    mesh.closest_point(p)
        .map(|sp| adhered(&sp, params))
        .unwrap_or(false)
}
