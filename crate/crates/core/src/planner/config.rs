use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::PlannerError;
use crate::tape::AdhesionParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    /// Element length `l_e` (m).
    pub element_length: f64,
    /// Rotation per step `δθ` (rad).
    pub angle_step: f64,
    /// Adhesion threshold `ε` (m).
    pub epsilon: f64,
    /// Offset along the tension direction added by [`apply_residual`](super::apply_residual) (m).
    pub residual_distance: f64,
    /// Iteration budget; `None` means `N · ⌈2π/δθ⌉`.
    pub max_iterations: Option<usize>,
    pub concave_mode: bool,
    pub penetration_counts_as_contact: bool,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            element_length: 0.005,
            angle_step: 0.5_f64.to_radians(),
            epsilon: 1e-3,
            residual_distance: 0.003,
            max_iterations: None,
            concave_mode: false,
            penetration_counts_as_contact: true,
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<(), PlannerError> {
        let positive = [
            ("element_length", self.element_length),
            ("angle_step", self.angle_step),
            ("epsilon", self.epsilon),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(PlannerError::InvalidConfig(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        if !(self.residual_distance.is_finite() && self.residual_distance >= 0.0) {
            return Err(PlannerError::InvalidConfig(format!(
                "residual_distance must be >= 0, got {}",
                self.residual_distance
            )));
        }
        if self.max_iterations == Some(0) {
            return Err(PlannerError::InvalidConfig(
                "max_iterations must be > 0".into(),
            ));
        }
        if self.tunneling_risk() {
            log::warn!(
                "angle_step * element_length = {:.3e} m exceeds epsilon = {:.3e} m with penetration \
                 contact disabled; elements may step over the adhesion band",
                self.angle_step * self.element_length,
                self.epsilon
            );
        }
        Ok(())
    }

    /// True when one rotation step can move the next element further than `ε`
    /// and nothing else would catch it.
    pub fn tunneling_risk(&self) -> bool {
        !self.penetration_counts_as_contact && self.angle_step * self.element_length > self.epsilon
    }

    pub fn adhesion(&self) -> AdhesionParams {
        AdhesionParams {
            epsilon: self.epsilon,
            penetration_counts_as_contact: self.penetration_counts_as_contact,
        }
    }

    pub fn iteration_budget(&self, element_count: usize) -> usize {
        self.max_iterations
            .unwrap_or_else(|| element_count * (TAU / self.angle_step).ceil() as usize)
    }

    /// Element count for a tape of length `l`.
    pub fn element_count(&self, tape_length: f64) -> usize {
        (tape_length / self.element_length).round() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = PlannerConfig::default();
        cfg.validate().unwrap();
        assert!((cfg.angle_step - 8.727e-3).abs() < 1e-6);
        assert_eq!(cfg.iteration_budget(30), 30 * 720);
        assert_eq!(cfg.element_count(0.15), 30);
    }

    #[test]
    fn rejects_bad_values() {
        let mut cfg = PlannerConfig {
            epsilon: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        cfg.epsilon = 1e-3;
        cfg.residual_distance = -0.001;
        assert!(matches!(
            cfg.validate(),
            Err(PlannerError::InvalidConfig(_))
        ));
        cfg.residual_distance = 0.0;
        cfg.max_iterations = Some(0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn tunneling_guard() {
        let mut cfg = PlannerConfig {
            angle_step: 0.5,
            epsilon: 1e-3,
            penetration_counts_as_contact: false,
            ..Default::default()
        };
        assert!(cfg.tunneling_risk());
        // warning only
        cfg.validate().unwrap();
        cfg.penetration_counts_as_contact = true;
        assert!(!cfg.tunneling_risk());
    }
}
