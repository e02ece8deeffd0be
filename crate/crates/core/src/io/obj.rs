//! Wavefront OBJ, `v` and `f` records only.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{IoError, ParsedMesh};
use crate::mesh::TriMesh;

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

/// Resolve one `f` token (`i`, `i/j`, `i//k`, `i/j/k`) to a 0-based index.
/// Positive indices are range-checked once the whole file is read.
fn face_index(token: &str, seen: usize, line: usize) -> Result<i64, IoError> {
    let head = token.split('/').next().unwrap_or("");
    let i: i64 = head.parse().map_err(|_| parse_err(line, format!("bad face index `{token}`")))?;
    match i {
        0 => Err(parse_err(line, "face index 0 (OBJ indices start at 1)")),
        i if i > 0 => Ok(i - 1),
        i => {
            let k = seen as i64 + i;
            if k < 0 {
                return Err(parse_err(line, format!("relative index {i} reaches before the first vertex")));
            }
            Ok(k)
        }
    }
}

pub fn parse_obj(bytes: &[u8]) -> Result<ParsedMesh, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        parse_err(line, "invalid UTF-8")
    })?;
    let mut positions: Vec<[f64; 3]> = Vec::new();
    let mut polygons: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut ignored: BTreeMap<String, usize> = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "v" => {
                let vals: Vec<f64> = tokens
                    .map(|t| t.parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| parse_err(line, "malformed vertex"))?;
                if !(3..=4).contains(&vals.len()) {
                    return Err(parse_err(line, format!("vertex needs 3 coordinates, found {}", vals.len())));
                }
                let w = vals.get(3).copied().unwrap_or(1.0);
                let p = [vals[0] / w, vals[1] / w, vals[2] / w];
                if p.iter().any(|c| !c.is_finite()) {
                    return Err(parse_err(line, "non-finite vertex coordinate"));
                }
                positions.push(p);
            }
            "f" => {
                let idx: Vec<i64> = tokens.map(|t| face_index(t, positions.len(), line)).collect::<Result<_, _>>()?;
                if idx.len() < 3 {
                    return Err(parse_err(line, format!("face needs at least 3 vertices, found {}", idx.len())));
                }
                polygons.push((line, idx));
            }
            other => *ignored.entry(other.to_string()).or_default() += 1,
        }
    }

    let mut diagnostics: Vec<String> = ignored.iter().map(|(k, n)| format!("ignored {n} `{k}` record(s)")).collect();
    let mut faces = Vec::new();
    let count = positions.len() as i64;
    for (line, idx) in polygons {
        if let Some(bad) = idx.iter().find(|&&i| i >= count) {
            return Err(parse_err(line, format!("vertex index {} out of range (have {count})", bad + 1)));
        }
        for k in 1..idx.len() - 1 {
            let t = [idx[0] as usize, idx[k] as usize, idx[k + 1] as usize];
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                diagnostics.push(format!("line {line}: dropped triangle with a repeated vertex"));
                continue;
            }
            faces.push(t);
        }
    }
    let mesh = TriMesh::new(positions, faces)?;
    Ok(ParsedMesh { mesh, diagnostics })
}

/// OBJ text with shortest round-trip coordinates and 1-based indices.
pub fn write_obj(m: &TriMesh) -> String {
    let mut s = String::new();
    for p in m.positions() {
        writeln!(s, "v {} {} {}", p[0], p[1], p[2]).unwrap();
    }
    for f in m.faces() {
        writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).unwrap();
    }
    s
}
