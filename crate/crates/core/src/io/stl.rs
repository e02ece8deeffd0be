//! STL in both encodings. Stored normals are ignored; orientation comes
//! from the vertex winding.

use std::collections::HashMap;

use super::{IoError, ParsedMesh};
use crate::mesh::TriMesh;

fn looks_ascii(bytes: &[u8]) -> bool {
    let start = bytes.iter().position(|b| !b.is_ascii_whitespace()).unwrap_or(bytes.len());
    bytes[start..].starts_with(b"solid")
}

/// Read either encoding and weld vertices. `weld_epsilon == 0` merges only
/// bit-identical coordinates (with `-0.0` equal to `0.0`).
pub fn parse_stl(bytes: &[u8], weld_epsilon: f64) -> Result<ParsedMesh, IoError> {
    let binary_len = |n: usize| 84 + 50 * n;
    let declared = (bytes.len() >= 84).then(|| u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize);
    let triangles = match declared {
        Some(n) if bytes.len() == binary_len(n) => read_binary(bytes, n),
        _ if looks_ascii(bytes) => read_ascii(bytes)?,
        Some(n) => return Err(IoError::TruncatedStl { declared: n, expected: binary_len(n), actual: bytes.len() }),
        None => return Err(IoError::TruncatedStl { declared: 0, expected: 84, actual: bytes.len() }),
    };
    weld(&triangles, weld_epsilon)
}

fn read_binary(bytes: &[u8], n: usize) -> Vec<[[f64; 3]; 3]> {
    let f = |at: usize| f32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()) as f64;
    (0..n)
        .map(|t| {
            let base = 84 + 50 * t + 12;
            [0, 1, 2].map(|v| [0, 1, 2].map(|k| f(base + 12 * v + 4 * k)))
        })
        .collect()
}

fn read_ascii(bytes: &[u8]) -> Result<Vec<[[f64; 3]; 3]>, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|_| IoError::Parse { line: 0, message: "invalid UTF-8".into() })?;
    let mut out = Vec::new();
    let mut current: Vec<[f64; 3]> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            Some("vertex") => {
                let v: Vec<f64> = tokens
                    .map(|t| t.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| IoError::Parse { line, message: "malformed vertex".into() })?;
                if v.len() != 3 {
                    return Err(IoError::Parse { line, message: "vertex needs 3 coordinates".into() });
                }
                current.push([v[0], v[1], v[2]]);
            }
            Some("endfacet") => {
                if current.len() != 3 {
                    return Err(IoError::Parse { line, message: format!("facet has {} vertices", current.len()) });
                }
                out.push([current[0], current[1], current[2]]);
                current.clear();
            }
            _ => {}
        }
    }
    Ok(out)
}

fn key(p: &[f64; 3]) -> [u64; 3] {
    p.map(|c| if c == 0.0 { 0 } else { c.to_bits() })
}

fn weld(triangles: &[[[f64; 3]; 3]], eps: f64) -> Result<ParsedMesh, IoError> {
    let mut positions: Vec<[f64; 3]> = Vec::new();
    let mut exact: HashMap<[u64; 3], usize> = HashMap::new();
    let mut grid: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    let mut index_of = |p: [f64; 3]| -> usize {
        if eps <= 0.0 {
            return *exact.entry(key(&p)).or_insert_with(|| {
                positions.push(p);
                positions.len() - 1
            });
        }
        let cell = p.map(|c| (c / eps).floor() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(list) = grid.get(&[cell[0] + dx, cell[1] + dy, cell[2] + dz]) {
                        for &i in list {
                            let q = positions[i];
                            let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2);
                            if d2 <= eps * eps {
                                return i;
                            }
                        }
                    }
                }
            }
        }
        positions.push(p);
        grid.entry(cell).or_default().push(positions.len() - 1);
        positions.len() - 1
    };
    let mut faces = Vec::with_capacity(triangles.len());
    let mut dropped = 0;
    for t in triangles {
        let f = t.map(&mut index_of);
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            dropped += 1;
        } else {
            faces.push(f);
        }
    }
    let mut diagnostics = Vec::new();
    if dropped > 0 {
        diagnostics.push(format!("dropped {dropped} triangle(s) that collapsed when welding"));
    }
    let mesh = TriMesh::new(positions, faces)?;
    Ok(ParsedMesh { mesh, diagnostics })
}

/// Binary STL bytes for a mesh (coordinates rounded to 32-bit floats).
pub fn write_binary_stl(m: &TriMesh) -> Vec<u8> {
    let mut out = vec![0u8; 80];
    out.extend_from_slice(&(m.face_count() as u32).to_le_bytes());
    for f in m.faces() {
        out.extend_from_slice(&[0u8; 12]);
        for &v in f {
            for c in m.positions()[v] {
                out.extend_from_slice(&(c as f32).to_le_bytes());
            }
        }
        out.extend_from_slice(&[0u8; 2]);
    }
    out
}

/// ASCII STL text for a mesh.
pub fn write_ascii_stl(m: &TriMesh) -> String {
    let mut s = String::from("solid mesh\n");
    for f in m.faces() {
        s.push_str("  facet normal 0 0 0\n    outer loop\n");
        for &v in f {
            let p = m.positions()[v];
            s.push_str(&format!("      vertex {} {} {}\n", p[0], p[1], p[2]));
        }
        s.push_str("    endloop\n  endfacet\n");
    }
    s.push_str("endsolid mesh\n");
    s
}
