use std::collections::HashMap;

use super::{GeometryError, SurfaceMesh, Vec3};

/// Points closer than this (m) to a face plane count as lying on it.
/// Scaled up for point clouds larger than a meter.
pub const HULL_PLANE_EPS: f64 = 1e-10;

struct Face {
    v: [usize; 3],
    normal: Vec3,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Face {
    fn new(points: &[Vec3], v: [usize; 3]) -> Face {
        let [a, b, c] = v.map(|i| points[i]);
        let cross = (b - a).cross(&(c - a));
        let normal = cross / cross.norm();
        Face {
            v,
            normal,
            offset: normal.dot(&a),
            outside: Vec::new(),
            alive: true,
        }
    }

    fn dist(&self, p: &Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.v;
        [(a, b), (b, c), (c, a)]
    }
}

/// Incremental (quickhull-style) 3-d convex hull.
///
/// Returns only the hull vertices, re-indexed in order of first use, with
/// every face wound counter-clockwise as seen from outside.
pub fn convex_hull(points: &[Vec3]) -> Result<SurfaceMesh, GeometryError> {
    if points.len() < 4 {
        return Err(GeometryError::DegenerateHull);
    }
    let (lo, hi) = points.iter().fold(
        (Vec3::repeat(f64::INFINITY), Vec3::repeat(f64::NEG_INFINITY)),
        |(lo, hi), p| (lo.inf(p), hi.sup(p)),
    );
    let eps = HULL_PLANE_EPS * (hi - lo).amax().max(1.0);

    let simplex = initial_simplex(points, eps)?;
    let mut faces: Vec<Face> = Vec::new();
    for skip in 0..4 {
        let mut tri = [0usize; 3];
        let mut k = 0;
        for (i, &s) in simplex.iter().enumerate() {
            if i != skip {
                tri[k] = s;
                k += 1;
            }
        }
        let mut face = Face::new(points, tri);
        if face.dist(&points[simplex[skip]]) > 0.0 {
            tri.swap(1, 2);
            face = Face::new(points, tri);
        }
        faces.push(face);
    }

    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, face) in faces.iter().enumerate() {
        for e in face.edges() {
            edge_owner.insert(e, f);
        }
    }

    let candidates: Vec<usize> = (0..points.len()).filter(|i| !simplex.contains(i)).collect();
    assign_outside(points, &mut faces, &[0, 1, 2, 3], &candidates, eps);

    let mut visible = Vec::new();
    let mut horizon = Vec::new();
    let mut stack = Vec::new();
    let mut cursor = 0;
    while let Some(start) = (cursor..faces.len())
        .chain(0..cursor)
        .find(|&f| faces[f].alive && !faces[f].outside.is_empty())
    {
        cursor = start;
        let eye = *faces[start]
            .outside
            .iter()
            .max_by(|&&a, &&b| {
                faces[start]
                    .dist(&points[a])
                    .total_cmp(&faces[start].dist(&points[b]))
                    .then(b.cmp(&a))
            })
            .expect("non-empty outside set");
        let eye_p = points[eye];

        // Connected visible region by flood fill, horizon collected on the way.
        visible.clear();
        horizon.clear();
        stack.clear();
        let mut is_visible: HashMap<usize, bool> = HashMap::new();
        is_visible.insert(start, true);
        stack.push(start);
        while let Some(f) = stack.pop() {
            visible.push(f);
            for (u, v) in faces[f].edges() {
                let nb = edge_owner[&(v, u)];
                match is_visible.get(&nb) {
                    Some(true) => {}
                    Some(false) => horizon.push((u, v)),
                    None => {
                        if faces[nb].dist(&eye_p) > eps {
                            is_visible.insert(nb, true);
                            stack.push(nb);
                        } else {
                            is_visible.insert(nb, false);
                            horizon.push((u, v));
                        }
                    }
                }
            }
        }

        let mut orphans = Vec::new();
        for &f in &visible {
            faces[f].alive = false;
            orphans.extend(faces[f].outside.drain(..).filter(|&p| p != eye));
            for e in faces[f].edges() {
                edge_owner.remove(&e);
            }
        }
        let first_new = faces.len();
        for &(u, v) in &horizon {
            let f = faces.len();
            faces.push(Face::new(points, [u, v, eye]));
            edge_owner.insert((u, v), f);
            edge_owner.insert((v, eye), f);
            edge_owner.insert((eye, u), f);
        }
        orphans.sort_unstable();
        let new_faces: Vec<usize> = (first_new..faces.len()).collect();
        assign_outside(points, &mut faces, &new_faces, &orphans, eps);
    }

    let mut remap: Vec<Option<usize>> = vec![None; points.len()];
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for face in faces.iter().filter(|f| f.alive) {
        let tri = face.v.map(|i| {
            *remap[i].get_or_insert_with(|| {
                vertices.push(points[i]);
                vertices.len() - 1
            })
        });
        triangles.push(tri);
    }
    let mesh = SurfaceMesh::new(vertices, triangles).map_err(|_| GeometryError::DegenerateHull)?;
    Ok(mesh.oriented_outward())
}

/// Convex hull of a mesh's vertices.
pub fn convexify(mesh: &SurfaceMesh) -> Result<SurfaceMesh, GeometryError> {
    convex_hull(mesh.vertices())
}

fn assign_outside(
    points: &[Vec3],
    faces: &mut [Face],
    targets: &[usize],
    candidates: &[usize],
    eps: f64,
) {
    for &p in candidates {
        let mut best = None;
        let mut best_d = eps;
        for &f in targets {
            let d = faces[f].dist(&points[p]);
            if d > best_d {
                best_d = d;
                best = Some(f);
            }
        }
        if let Some(f) = best {
            faces[f].outside.push(p);
        }
    }
}

fn initial_simplex(points: &[Vec3], eps: f64) -> Result<[usize; 4], GeometryError> {
    let mut extremes = [0usize; 6];
    for (i, p) in points.iter().enumerate() {
        for axis in 0..3 {
            if p[axis] < points[extremes[2 * axis]][axis] {
                extremes[2 * axis] = i;
            }
            if p[axis] > points[extremes[2 * axis + 1]][axis] {
                extremes[2 * axis + 1] = i;
            }
        }
    }
    let mut best = (0, 0, 0.0);
    for &a in &extremes {
        for &b in &extremes {
            let d = (points[a] - points[b]).norm();
            if d > best.2 {
                best = (a, b, d);
            }
        }
    }
    let (i0, i1, span) = best;
    if span <= eps {
        return Err(GeometryError::DegenerateHull);
    }
    let dir = (points[i1] - points[i0]) / span;

    let (i2, d2) = argmax(points, |p| {
        let w = p - points[i0];
        (w - dir * w.dot(&dir)).norm()
    });
    if d2 <= eps {
        return Err(GeometryError::DegenerateHull);
    }
    let n = (points[i1] - points[i0])
        .cross(&(points[i2] - points[i0]))
        .normalize();
    let (i3, d3) = argmax(points, |p| n.dot(&(p - points[i0])).abs());
    if d3 <= eps {
        return Err(GeometryError::DegenerateHull);
    }
    Ok([i0, i1, i2, i3])
}

fn argmax(points: &[Vec3], f: impl Fn(&Vec3) -> f64) -> (usize, f64) {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, f(p)))
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<Vec3> {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(Vec3::new(
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ));
        }
        v
    }

    #[test]
    fn cube_hull_is_twelve_triangles() {
        let hull = convex_hull(&cube()).unwrap();
        assert_eq!(hull.face_count(), 12);
        assert_eq!(hull.vertices().len(), 8);
        assert!(hull.convexity_violation() <= 1e-7);
    }

    #[test]
    fn interior_point_is_dropped() {
        let mut pts = cube();
        pts.push(Vec3::new(0.5, 0.5, 0.5));
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.face_count(), 12);
        assert!(!hull.vertices().contains(&Vec3::new(0.5, 0.5, 0.5)));
    }

    #[test]
    fn normals_point_away_from_centroid() {
        let hull = convex_hull(&cube()).unwrap();
        let c = hull.centroid();
        for (tri, n) in hull.triangles().iter().zip(hull.normals()) {
            assert!(n.dot(&(hull.vertices()[tri[0]] - c)) > 0.0);
        }
    }

    #[test]
    fn coplanar_input_rejected() {
        let pts: Vec<Vec3> = (0..10)
            .map(|i| Vec3::new(i as f64, (i * i) as f64, 0.0))
            .collect();
        assert_eq!(
            convex_hull(&pts).unwrap_err(),
            GeometryError::DegenerateHull
        );
        let line: Vec<Vec3> = (0..10).map(|i| Vec3::new(i as f64, 0.0, 0.0)).collect();
        assert_eq!(
            convex_hull(&line).unwrap_err(),
            GeometryError::DegenerateHull
        );
        assert_eq!(
            convex_hull(&cube()[..3]).unwrap_err(),
            GeometryError::DegenerateHull
        );
    }

    #[test]
    fn duplicates_and_coplanar_faces() {
        // cube corners, repeated, plus face-center points that lie on hull faces
        let mut pts = cube();
        pts.extend(cube());
        pts.push(Vec3::new(0.5, 0.5, 0.0));
        pts.push(Vec3::new(0.5, 0.5, 1.0));
        pts.push(Vec3::new(0.0, 0.5, 0.5));
        let hull = convex_hull(&pts).unwrap();
        assert!(hull.convexity_violation() <= 1e-7);
        for p in &pts {
            assert!(hull
                .triangles()
                .iter()
                .zip(hull.normals())
                .all(|(t, n)| n.dot(&(p - hull.vertices()[t[0]])) <= 1e-7));
        }
        let area: f64 = hull
            .triangles()
            .iter()
            .map(|t| {
                super::super::triangle_area(
                    &hull.vertices()[t[0]],
                    &hull.vertices()[t[1]],
                    &hull.vertices()[t[2]],
                )
            })
            .sum();
        assert!((area - 6.0).abs() < 1e-12);
    }
}
