use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::geometry::{SurfaceMesh, Vec3};
use crate::planner::{plan_bimanual, PlacementPlan, PlannerConfig};
use crate::tape::TapeState;

/// Base plan against a finer reference plan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    /// Largest distance between a base element and the reference centerline
    /// at the same arclength from the middle (m).
    pub max_deviation: f64,
    /// Base element where `max_deviation` occurs.
    pub worst_element: usize,
    pub base_iterations: usize,
    pub refined_iterations: usize,
    pub refined_angle_step: f64,
    pub refined_element_length: f64,
}

/// Plans with `cfg` and again with `δθ/4`, `l_e/2`, then compares both
/// attached centerlines half by half, matching points by arclength from the
/// middle element.
pub fn refinement_oracle(
    mesh: &SurfaceMesh,
    p_init: &Vec3,
    d_init: &Vec3,
    tape_length: f64,
    cfg: &PlannerConfig,
) -> Result<OracleComparison, VerifyError> {
    let refined_cfg = PlannerConfig {
        angle_step: cfg.angle_step / 4.0,
        element_length: cfg.element_length / 2.0,
        max_iterations: cfg.max_iterations.map(|m| m * 8),
        ..*cfg
    };
    let base = complete(
        plan_bimanual(mesh, p_init, d_init, tape_length, cfg)?,
        "base",
    )?;
    let refined = complete(
        plan_bimanual(mesh, p_init, d_init, tape_length, &refined_cfg)?,
        "refined",
    )?;

    let (mut max_deviation, mut worst_element) = (0.0, base.final_state.i_mid);
    for outward in [false, true] {
        let b = half(&base.final_state, outward);
        let r = half(&refined.final_state, outward);
        let (dev, k) = arclength_deviation(&b, &r);
        if dev > max_deviation {
            max_deviation = dev;
            worst_element = if outward {
                base.final_state.i_mid + k
            } else {
                base.final_state.i_mid - k
            };
        }
    }
    Ok(OracleComparison {
        max_deviation,
        worst_element,
        base_iterations: base.iterations(),
        refined_iterations: refined.iterations(),
        refined_angle_step: refined_cfg.angle_step,
        refined_element_length: refined_cfg.element_length,
    })
}

fn complete(plan: PlacementPlan, which: &'static str) -> Result<PlacementPlan, VerifyError> {
    if plan.is_complete() {
        Ok(plan)
    } else {
        Err(VerifyError::OracleFailed {
            plan: which,
            status: plan.status,
        })
    }
}

/// Element positions from the middle to one tape end.
fn half(state: &TapeState, toward_end: bool) -> Vec<Vec3> {
    let idx: Vec<usize> = if toward_end {
        (state.i_mid..state.len()).collect()
    } else {
        (0..=state.i_mid).rev().collect()
    };
    idx.into_iter()
        .map(|j| state.elements[j].position)
        .collect()
}

fn cumulative_length(points: &[Vec3]) -> Vec<f64> {
    let mut s = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    for (k, p) in points.iter().enumerate() {
        if k > 0 {
            acc += (p - points[k - 1]).norm();
        }
        s.push(acc);
    }
    s
}

/// Point at arclength `s` along a polyline, clamped to its ends.
fn point_at(points: &[Vec3], lengths: &[f64], s: f64) -> Vec3 {
    let k = lengths.partition_point(|&x| x <= s);
    if k == 0 {
        return points[0];
    }
    if k >= points.len() {
        return points[points.len() - 1];
    }
    let (s0, s1) = (lengths[k - 1], lengths[k]);
    let t = if s1 > s0 { (s - s0) / (s1 - s0) } else { 0.0 };
    points[k - 1] + (points[k] - points[k - 1]) * t
}

/// Max distance from each base point to the reference point at the same
/// arclength, and the base index where it occurs.
fn arclength_deviation(base: &[Vec3], reference: &[Vec3]) -> (f64, usize) {
    let sb = cumulative_length(base);
    let sr = cumulative_length(reference);
    let mut worst = (0.0, 0);
    for (k, p) in base.iter().enumerate() {
        let d = (p - point_at(reference, &sr, sb[k])).norm();
        if d > worst.0 {
            worst = (d, k);
        }
    }
    worst
}
