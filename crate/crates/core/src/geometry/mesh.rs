use super::triangle::{closest_point_unchecked, triangle_area};
use super::{GeometryError, Vec3};

/// Triangles with area at or below this (m²) are rejected as degenerate.
pub const MIN_TRIANGLE_AREA: f64 = 1e-12;

/// Result of a closest-point query against a [`SurfaceMesh`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfacePoint {
    pub position: Vec3,
    /// Outward unit normal of the winning face.
    pub normal: Vec3,
    pub face: usize,
    /// Distance from the query to `position`, negative when the query lies
    /// on the inner side of every face plane.
    pub signed_distance: f64,
}

impl SurfacePoint {
    pub fn distance(&self) -> f64 {
        self.signed_distance.abs()
    }
}

/// Triangle mesh with per-face unit normals taken from the winding order.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    vertices: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
    normals: Vec<Vec3>,
}

impl SurfaceMesh {
    /// Validates indices and triangle areas, then computes face normals
    /// (counter-clockwise winding is outward).
    pub fn new(vertices: Vec<Vec3>, triangles: Vec<[usize; 3]>) -> Result<Self, GeometryError> {
        if let Some(bad) = vertices
            .iter()
            .position(|v| !v.iter().all(|c| c.is_finite()))
        {
            return Err(GeometryError::InvalidMesh {
                reason: format!("vertex {bad} is not finite"),
                faces: vec![],
            });
        }
        let out_of_range: Vec<usize> = triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.iter().any(|&i| i >= vertices.len()))
            .map(|(f, _)| f)
            .collect();
        if !out_of_range.is_empty() {
            return Err(GeometryError::InvalidMesh {
                reason: "vertex index out of range".into(),
                faces: out_of_range,
            });
        }
        let degenerate: Vec<usize> = triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                let area = triangle_area(&vertices[t[0]], &vertices[t[1]], &vertices[t[2]]);
                area.is_nan() || area <= MIN_TRIANGLE_AREA
            })
            .map(|(f, _)| f)
            .collect();
        if !degenerate.is_empty() {
            return Err(GeometryError::InvalidMesh {
                reason: "zero-area face".into(),
                faces: degenerate,
            });
        }
        let normals = triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| vertices[i]);
                (b - a).cross(&(c - a)).normalize()
            })
            .collect();
        Ok(SurfaceMesh {
            vertices,
            triangles,
            normals,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn normals(&self) -> &[Vec3] {
        &self.normals
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangle(&self, face: usize) -> [Vec3; 3] {
        self.triangles[face].map(|i| self.vertices[i])
    }

    /// Mean of the vertex positions.
    pub fn centroid(&self) -> Vec3 {
        if self.vertices.is_empty() {
            return Vec3::zeros();
        }
        self.vertices.iter().sum::<Vec3>() / self.vertices.len() as f64
    }

    /// Flips every face whose normal points toward the vertex centroid.
    /// Faces whose plane passes through the centroid (within `1e-12` m)
    /// keep their winding, so flat patches are left as they are.
    pub fn oriented_outward(mut self) -> Self {
        let c = self.centroid();
        for (tri, n) in self.triangles.iter_mut().zip(self.normals.iter_mut()) {
            let side = n.dot(&(c - self.vertices[tri[0]]));
            if side > 1e-12 {
                tri.swap(1, 2);
                *n = -*n;
            }
        }
        self
    }

    /// Largest `n·(v − a)` over every face plane and every vertex. Zero or
    /// negative for a convex mesh with outward normals.
    pub fn convexity_violation(&self) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for (tri, n) in self.triangles.iter().zip(&self.normals) {
            let a = self.vertices[tri[0]];
            for v in &self.vertices {
                worst = worst.max(n.dot(&(v - a)));
            }
        }
        worst
    }

    pub fn is_convex(&self, tol: f64) -> bool {
        self.convexity_violation() <= tol
    }

    /// Half-space membership: strictly on the inner side of every face plane.
    pub fn contains(&self, p: &Vec3) -> bool {
        !self.is_empty()
            && self
                .triangles
                .iter()
                .zip(&self.normals)
                .all(|(tri, n)| n.dot(&(p - self.vertices[tri[0]])) < 0.0)
    }

    /// Nearest point over all triangles (linear scan, lowest face index wins ties).
    pub fn closest_point(&self, p: &Vec3) -> Result<SurfacePoint, GeometryError> {
        if self.is_empty() {
            return Err(GeometryError::EmptyMesh);
        }
        let mut best_face = 0;
        let mut best_pos = Vec3::zeros();
        let mut best_d2 = f64::INFINITY;
        for (f, tri) in self.triangles.iter().enumerate() {
            let [a, b, c] = tri.map(|i| self.vertices[i]);
            let q = closest_point_unchecked(p, &a, &b, &c);
            let d2 = (q - p).norm_squared();
            if d2 < best_d2 {
                best_d2 = d2;
                best_pos = q;
                best_face = f;
            }
        }
        let d = best_d2.sqrt();
        let signed_distance = if self.contains(p) { -d } else { d };
        Ok(SurfacePoint {
            position: best_pos,
            normal: self.normals[best_face],
            face: best_face,
            signed_distance,
        })
    }

    pub fn distance(&self, p: &Vec3) -> Result<f64, GeometryError> {
        self.closest_point(p).map(|s| s.distance())
    }
}

/// Free-function form of [`SurfaceMesh::closest_point`].
pub fn closest_point_on_surface(
    mesh: &SurfaceMesh,
    p: &Vec3,
) -> Result<SurfacePoint, GeometryError> {
    mesh.closest_point(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_patch() -> SurfaceMesh {
        let v = vec![
            Vec3::new(-1.0, -1.0, 0.0),
            Vec3::new(1.0, -1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(-1.0, 1.0, 0.0),
        ];
        SurfaceMesh::new(v, vec![[0, 1, 2], [0, 2, 3]]).unwrap()
    }

    #[test]
    fn flat_patch_query() {
        let m = flat_patch();
        let s = m.closest_point(&Vec3::new(0.2, 0.3, 0.5)).unwrap();
        assert!((s.position - Vec3::new(0.2, 0.3, 0.0)).norm() < 1e-15);
        assert!((s.signed_distance - 0.5).abs() < 1e-15);
        assert_eq!(s.normal, Vec3::z());
        let below = m.closest_point(&Vec3::new(0.2, 0.3, -0.5)).unwrap();
        assert!(below.signed_distance < 0.0);
    }

    #[test]
    fn query_at_vertex_is_zero_distance() {
        let m = flat_patch();
        let s = m.closest_point(&Vec3::new(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(s.distance(), 0.0);
        assert_eq!(s.position, Vec3::new(1.0, 1.0, 0.0));
    }

    #[test]
    fn empty_mesh_errors() {
        let m = SurfaceMesh::new(vec![], vec![]).unwrap();
        assert_eq!(
            m.closest_point(&Vec3::zeros()),
            Err(GeometryError::EmptyMesh)
        );
    }

    #[test]
    fn validation_names_faces() {
        let v = vec![Vec3::zeros(), Vec3::x(), Vec3::x() * 2.0, Vec3::y()];
        match SurfaceMesh::new(v.clone(), vec![[0, 1, 3], [0, 1, 2]]) {
            Err(GeometryError::InvalidMesh { faces, .. }) => assert_eq!(faces, vec![1]),
            other => panic!("{other:?}"),
        }
        match SurfaceMesh::new(v, vec![[0, 1, 7]]) {
            Err(GeometryError::InvalidMesh { faces, .. }) => assert_eq!(faces, vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn flat_patch_keeps_winding_when_oriented() {
        let m = flat_patch().oriented_outward();
        assert!(m.normals().iter().all(|n| *n == Vec3::z()));
        assert!(m.is_convex(1e-12));
    }
}
