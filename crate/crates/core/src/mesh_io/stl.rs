use std::collections::HashMap;

use super::{MeshIoError, RawMesh};
use crate::geometry::{SurfaceMesh, Vec3};

const HEADER_LEN: usize = 80;
const RECORD_LEN: usize = 50;

/// Binary STL is recognised by its size: 84 bytes plus 50 per face.
pub(crate) fn looks_binary(bytes: &[u8]) -> bool {
    if bytes.len() < HEADER_LEN + 4 {
        return false;
    }
    let count = u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
    bytes.len() == HEADER_LEN + 4 + count * RECORD_LEN
}

/// Parses binary or ASCII STL; identical vertices are welded.
pub fn parse_stl(bytes: &[u8]) -> Result<RawMesh, MeshIoError> {
    let corners = if looks_binary(bytes) {
        parse_binary(bytes)
    } else if bytes.starts_with(b"solid") {
        parse_ascii(&String::from_utf8_lossy(bytes))?
    } else {
        return Err(MeshIoError::format(None, "not a binary or ASCII STL file"));
    };
    Ok(weld(&corners))
}

fn parse_binary(bytes: &[u8]) -> Vec<[Vec3; 3]> {
    let count = u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
    let f32_at = |off: usize| f32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as f64;
    (0..count)
        .map(|f| {
            let base = HEADER_LEN + 4 + f * RECORD_LEN + 12;
            let v = |k: usize| {
                let o = base + 12 * k;
                Vec3::new(f32_at(o), f32_at(o + 4), f32_at(o + 8))
            };
            [v(0), v(1), v(2)]
        })
        .collect()
}

fn parse_ascii(text: &str) -> Result<Vec<[Vec3; 3]>, MeshIoError> {
    let mut corners = Vec::new();
    let mut current: Vec<Vec3> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("vertex") => {
                let mut c = [0.0; 3];
                for slot in &mut c {
                    *slot = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| MeshIoError::format(Some(lineno + 1), "bad vertex line"))?;
                }
                current.push(Vec3::new(c[0], c[1], c[2]));
            }
            Some("endfacet") => {
                if current.len() != 3 {
                    return Err(MeshIoError::format(
                        Some(lineno + 1),
                        format!("facet has {} vertices, expected 3", current.len()),
                    ));
                }
                corners.push([current[0], current[1], current[2]]);
                current.clear();
            }
            _ => {}
        }
    }
    Ok(corners)
}

fn weld(corners: &[[Vec3; 3]]) -> RawMesh {
    let mut index: HashMap<[u64; 3], usize> = HashMap::new();
    let mut raw = RawMesh::default();
    for tri in corners {
        let ids = tri.map(|v| {
            let key = [v.x.to_bits(), v.y.to_bits(), v.z.to_bits()];
            *index.entry(key).or_insert_with(|| {
                raw.vertices.push(v);
                raw.vertices.len() - 1
            })
        });
        raw.triangles.push(ids);
    }
    raw
}

/// Little-endian binary STL with per-face normals.
pub fn write_stl_binary(mesh: &SurfaceMesh) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 + RECORD_LEN * mesh.face_count());
    let mut header = [0u8; HEADER_LEN];
    let tag = b"tapewrap binary stl";
    header[..tag.len()].copy_from_slice(tag);
    out.extend_from_slice(&header);
    out.extend_from_slice(&(mesh.face_count() as u32).to_le_bytes());
    for (f, n) in mesh.normals().iter().enumerate() {
        let verts = mesh.triangle(f);
        for v in std::iter::once(n).chain(verts.iter()) {
            for c in [v.x, v.y, v.z] {
                out.extend_from_slice(&(c as f32).to_le_bytes());
            }
        }
        out.extend_from_slice(&0u16.to_le_bytes());
    }
    out
}
