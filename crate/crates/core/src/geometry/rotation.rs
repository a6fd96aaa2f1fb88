use std::ops::Mul;

use nalgebra::{Matrix3, Quaternion, Rotation3, UnitQuaternion};

use super::{GeometryError, Vec3, UNIT_TOL};

/// A proper rotation in 3-d, stored as an orthonormal matrix with det +1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rot3(Matrix3<f64>);

impl Default for Rot3 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Rot3 {
    pub fn identity() -> Self {
        Rot3(Matrix3::identity())
    }

    /// Wraps a matrix without checking orthonormality. Use
    /// [`Rot3::orthonormality_error`] to audit the result.
    pub fn from_matrix_unchecked(m: Matrix3<f64>) -> Self {
        Rot3(m)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.0 * v
    }

    pub fn transpose(&self) -> Rot3 {
        Rot3(self.0.transpose())
    }

    /// Rotation angle in `[0, π]` recovered from the trace.
    pub fn angle(&self) -> f64 {
        let c = ((self.0.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
        c.acos()
    }

    /// Unit axis and angle. Returns `None` for the identity (no defined axis).
    ///
    /// The axis comes from the skew-symmetric part, so it loses accuracy as
    /// the angle approaches π.
    pub fn axis_angle(&self) -> Option<(Vec3, f64)> {
        let m = &self.0;
        let skew = Vec3::new(
            m[(2, 1)] - m[(1, 2)],
            m[(0, 2)] - m[(2, 0)],
            m[(1, 0)] - m[(0, 1)],
        );
        let s = skew.norm();
        if s < 1e-15 {
            return None;
        }
        let angle = s.atan2(m.trace() - 1.0);
        Some((skew / s, angle))
    }

    /// Largest deviation from orthonormality: max of `|RᵀR − I|` elementwise
    /// and `|det R − 1|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.0.transpose() * self.0 - Matrix3::identity();
        let elem = gram.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        elem.max((self.0.determinant() - 1.0).abs())
    }

    /// Largest elementwise difference between two rotations.
    pub fn max_abs_diff(&self, other: &Rot3) -> f64 {
        (self.0 - other.0)
            .iter()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Unit quaternion `[w, x, y, z]` with `w ≥ 0`.
    pub fn to_quaternion(&self) -> [f64; 4] {
        let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(self.0));
        let sign = if q.w < 0.0 { -1.0 } else { 1.0 };
        [sign * q.w, sign * q.i, sign * q.j, sign * q.k]
    }

    /// Inverse of [`Rot3::to_quaternion`]; the input is normalized first.
    pub fn from_quaternion(q: [f64; 4]) -> Rot3 {
        let uq = UnitQuaternion::from_quaternion(Quaternion::new(q[0], q[1], q[2], q[3]));
        Rot3(*uq.to_rotation_matrix().matrix())
    }
}

impl Mul for Rot3 {
    type Output = Rot3;

    fn mul(self, rhs: Rot3) -> Rot3 {
        Rot3(self.0 * rhs.0)
    }
}

impl Mul<Vec3> for Rot3 {
    type Output = Vec3;

    fn mul(self, rhs: Vec3) -> Vec3 {
        self.0 * rhs
    }
}

/// Rotation by `angle` radians about the unit `axis`:
/// `R = I + sin θ K + (1 − cos θ) K²`, with `K` the cross-product matrix of the axis.
pub fn rodrigues(axis: &Vec3, angle: f64) -> Result<Rot3, GeometryError> {
    let norm = axis.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
        return Err(GeometryError::InvalidAxis(norm));
    }
    if !angle.is_finite() {
        return Err(GeometryError::InvalidAngle(angle));
    }
    let k = Matrix3::new(
        0.0, -axis.z, axis.y, //
        axis.z, 0.0, -axis.x, //
        -axis.y, axis.x, 0.0,
    );
    let (s, c) = angle.sin_cos();
    Ok(Rot3(Matrix3::identity() + k * s + k * k * (1.0 - c)))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    fn close(a: &Vec3, b: &Vec3, tol: f64) -> bool {
        (a - b).amax() <= tol
    }

    #[test]
    fn quarter_turn_about_z() {
        let r = rodrigues(&Vec3::z(), FRAC_PI_2).unwrap();
        assert!(close(&r.apply(&Vec3::x()), &Vec3::y(), 1e-15));
    }

    #[test]
    fn zero_angle_is_identity() {
        let r = rodrigues(&Vec3::y(), 0.0).unwrap();
        assert_eq!(r, Rot3::identity());
    }

    #[test]
    fn half_turn_flips() {
        let r = rodrigues(&Vec3::z(), PI).unwrap();
        assert!(close(&r.apply(&Vec3::x()), &-Vec3::x(), 1e-15));
        assert!(r.orthonormality_error() < 1e-12);
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(matches!(
            rodrigues(&Vec3::new(0.0, 0.0, 2.0), 0.1),
            Err(GeometryError::InvalidAxis(_))
        ));
        assert!(matches!(
            rodrigues(&Vec3::zeros(), 0.1),
            Err(GeometryError::InvalidAxis(_))
        ));
        assert!(matches!(
            rodrigues(&Vec3::z(), f64::NAN),
            Err(GeometryError::InvalidAngle(_))
        ));
    }

    #[test]
    fn axis_angle_recovers_inputs() {
        let axis = Vec3::new(1.0, -2.0, 0.5).normalize();
        let r = rodrigues(&axis, 0.3).unwrap();
        let (a, th) = r.axis_angle().unwrap();
        assert!(close(&a, &axis, 1e-14));
        assert!((th - 0.3).abs() < 1e-14);
        assert!((r.angle() - 0.3).abs() < 1e-12);
        assert!(Rot3::identity().axis_angle().is_none());
    }

    #[test]
    fn quaternion_round_trip() {
        let r = rodrigues(&Vec3::new(0.3, 0.4, -0.5).normalize(), 2.0).unwrap();
        let q = r.to_quaternion();
        assert!(q[0] >= 0.0);
        assert!(Rot3::from_quaternion(q).max_abs_diff(&r) < 1e-14);
        assert_eq!(Rot3::identity().to_quaternion(), [1.0, 0.0, 0.0, 0.0]);
    }
}
