use std::fmt::Write;

use super::{MeshIoError, RawMesh};
use crate::geometry::{SurfaceMesh, Vec3};

/// Parses `v` and triangular `f` lines; every other statement is ignored.
/// Face tokens may carry `/vt/vn` suffixes and negative (relative) indices.
pub fn parse_obj(text: &str) -> Result<RawMesh, MeshIoError> {
    let mut raw = RawMesh::default();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = Some(lineno + 1);
        let line = line.split('#').next().unwrap_or("").trim();
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut c = [0.0; 3];
                for slot in &mut c {
                    let tok = tokens.next().ok_or_else(|| {
                        MeshIoError::format(line_no, "vertex needs three coordinates")
                    })?;
                    *slot = tok.parse().map_err(|_| {
                        MeshIoError::format(line_no, format!("bad coordinate `{tok}`"))
                    })?;
                }
                raw.vertices.push(Vec3::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let toks: Vec<&str> = tokens.collect();
                if toks.len() != 3 {
                    return Err(MeshIoError::format(
                        line_no,
                        format!(
                            "only triangular faces are supported, got {} vertices",
                            toks.len()
                        ),
                    ));
                }
                let mut tri = [0usize; 3];
                for (slot, tok) in tri.iter_mut().zip(toks) {
                    let head = tok.split('/').next().unwrap_or("");
                    let idx: i64 = head.parse().map_err(|_| {
                        MeshIoError::format(line_no, format!("bad face index `{tok}`"))
                    })?;
                    let resolved = if idx > 0 {
                        idx - 1
                    } else if idx < 0 {
                        raw.vertices.len() as i64 + idx
                    } else {
                        return Err(MeshIoError::format(
                            line_no,
                            "face index 0 is invalid (indices are 1-based)",
                        ));
                    };
                    if resolved < 0 {
                        return Err(MeshIoError::format(
                            line_no,
                            format!("face index `{tok}` out of range"),
                        ));
                    }
                    *slot = resolved as usize;
                }
                raw.triangles.push(tri);
            }
            _ => {}
        }
    }
    Ok(raw)
}

pub fn write_obj(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    writeln!(out, "# tapewrap surface mesh").unwrap();
    writeln!(
        out,
        "# {} vertices, {} faces",
        mesh.vertices().len(),
        mesh.face_count()
    )
    .unwrap();
    write_obj_body(&mut out, mesh, 0);
    out
}

/// Appends `v`/`f` lines with face indices offset by `base` vertices.
pub(crate) fn write_obj_body(out: &mut String, mesh: &SurfaceMesh, base: usize) {
    for v in mesh.vertices() {
        writeln!(out, "v {} {} {}", v.x, v.y, v.z).unwrap();
    }
    for t in mesh.triangles() {
        writeln!(
            out,
            "f {} {} {}",
            t[0] + base + 1,
            t[1] + base + 1,
            t[2] + base + 1
        )
        .unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_suffixes_and_comments() {
        let raw =
            parse_obj("# hi\nv 0 0 0\nv 1 0 0 # trailing\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 -1//1\n")
                .unwrap();
        assert_eq!(raw.vertices.len(), 3);
        assert_eq!(raw.triangles, vec![[0, 1, 2]]);
    }

    #[test]
    fn rejects_quads_and_garbage() {
        let e = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 4 3\n").unwrap_err();
        assert!(matches!(e, MeshIoError::FormatError { line: Some(5), .. }));
        assert!(parse_obj("v 0 zero 0\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 0 1 2\n").is_err());
    }

    #[test]
    fn writer_round_trips_exactly() {
        let mesh = SurfaceMesh::new(
            vec![
                Vec3::new(0.1, 0.2, 0.3),
                Vec3::new(1.0 / 3.0, 0.0, 0.0),
                Vec3::new(0.0, 2.0_f64.sqrt(), 0.0),
            ],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let raw = parse_obj(&write_obj(&mesh)).unwrap();
        assert_eq!(raw.vertices, mesh.vertices());
        assert_eq!(raw.triangles, mesh.triangles());
    }
}
