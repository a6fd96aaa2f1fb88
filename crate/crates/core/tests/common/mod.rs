//! Independent reference implementations used as test oracles. Nothing here
//! calls into the geometry kernel under test.

#![allow(dead_code)]

use tapewrap::geometry::{SurfaceMesh, Vec3};
use tapewrap::planner::PlacementPlan;
use tapewrap::tape::Side;

/// Rotation matrix from a unit quaternion built directly from axis/angle,
/// applied as `q v q*` through the Hamilton product.
pub fn quat_rotate(axis: &Vec3, angle: f64, v: &Vec3) -> Vec3 {
    let a = axis.normalize();
    let (s, c) = (0.5 * angle).sin_cos();
    let q = [c, a.x * s, a.y * s, a.z * s];
    let qv = [0.0, v.x, v.y, v.z];
    let conj = [q[0], -q[1], -q[2], -q[3]];
    let r = hamilton(&hamilton(&q, &qv), &conj);
    Vec3::new(r[1], r[2], r[3])
}

fn hamilton(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn closest_on_segment(p: &Vec3, a: &Vec3, b: &Vec3) -> Vec3 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return *a;
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    a + ab * t
}

/// Point-triangle distance by plane projection: if the projection falls
/// inside (barycentric test) use it, otherwise take the best edge point.
pub fn brute_triangle_distance(p: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let n = (b - a).cross(&(c - a));
    let nn = n.norm_squared();
    let proj = p - n * ((p - a).dot(&n) / nn);
    let area = |x: &Vec3, y: &Vec3, z: &Vec3| (y - x).cross(&(z - x)).dot(&n);
    let (u, v, w) = (area(&proj, b, c), area(a, &proj, c), area(a, b, &proj));
    if u >= 0.0 && v >= 0.0 && w >= 0.0 {
        return (p - proj).norm();
    }
    [
        closest_on_segment(p, a, b),
        closest_on_segment(p, b, c),
        closest_on_segment(p, c, a),
    ]
    .iter()
    .map(|q| (p - q).norm())
    .fold(f64::INFINITY, f64::min)
}

/// Exhaustive unsigned distance from `p` to the mesh.
pub fn brute_distance(mesh: &SurfaceMesh, p: &Vec3) -> f64 {
    mesh.triangles()
        .iter()
        .map(|t| {
            let [a, b, c] = t.map(|i| mesh.vertices()[i]);
            brute_triangle_distance(p, &a, &b, &c)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest signed height of any point above any face plane of `hull`.
pub fn halfspace_violation(hull: &SurfaceMesh, points: &[Vec3]) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for t in hull.triangles() {
        let [a, b, c] = t.map(|i| hull.vertices()[i]);
        let n = (b - a).cross(&(c - a)).normalize();
        for p in points {
            worst = worst.max(n.dot(&(p - a)));
        }
    }
    worst
}

/// Whether every undirected edge of the mesh is shared by exactly two faces
/// with opposite orientation.
pub fn is_closed_manifold(mesh: &SurfaceMesh) -> bool {
    use std::collections::HashMap;
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    for t in mesh.triangles() {
        for k in 0..3 {
            *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
        }
    }
    directed
        .iter()
        .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
}

/// Per-side gripper positions with any residual offset removed.
pub fn grip_positions(plan: &PlacementPlan, side: Side) -> Vec<Vec3> {
    plan.records
        .iter()
        .map(|r| r.pose(side).position - r.tension(side) * plan.residual_offset)
        .collect()
}

/// Azimuth about the z axis.
pub fn azimuth(p: &Vec3) -> f64 {
    p.y.atan2(p.x)
}
