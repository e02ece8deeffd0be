//! Mesh files in, result records out.

mod obj;
pub mod report;
mod stl;

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::mesh::{MeshError, TriMesh};

pub use obj::{parse_obj, write_obj};
pub use stl::{parse_stl, write_ascii_stl, write_binary_stl};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("truncated STL: {declared} triangles need {expected} bytes, found {actual}")]
    TruncatedStl { declared: usize, expected: usize, actual: usize },
    #[error("cannot tell the format of {0}; use a .obj or .stl extension")]
    UnknownFormat(PathBuf),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

/// A parsed mesh plus notes about what the parser skipped or dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedMesh {
    pub mesh: TriMesh,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Obj,
    AsciiStl,
    BinaryStl,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshFile {
    pub path: PathBuf,
    pub format: Format,
    pub mesh: TriMesh,
    pub diagnostics: Vec<String>,
    /// Hex SHA-256 of the file bytes.
    pub digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn detect(path: &Path, bytes: &[u8]) -> Result<Format, IoError> {
    let ext = path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase());
    let stl_kind = || {
        let start = bytes.iter().position(|b| !b.is_ascii_whitespace()).unwrap_or(bytes.len());
        let binary = bytes.len() >= 84
            && bytes.len() == 84 + 50 * u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
        if !binary && bytes[start..].starts_with(b"solid") {
            Format::AsciiStl
        } else {
            Format::BinaryStl
        }
    };
    match ext.as_deref() {
        Some("obj") => Ok(Format::Obj),
        Some("stl") => Ok(stl_kind()),
        _ => Err(IoError::UnknownFormat(path.to_path_buf())),
    }
}

/// Read and parse a mesh file, choosing the parser by extension.
pub fn load(path: &Path, weld_epsilon: f64) -> Result<MeshFile, IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })?;
    let format = detect(path, &bytes)?;
    let parsed = match format {
        Format::Obj => parse_obj(&bytes)?,
        Format::AsciiStl | Format::BinaryStl => parse_stl(&bytes, weld_epsilon)?,
    };
    Ok(MeshFile {
        path: path.to_path_buf(),
        format,
        mesh: parsed.mesh,
        diagnostics: parsed.diagnostics,
        digest: sha256_hex(&bytes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn unknown_extension() {
        assert!(matches!(detect(Path::new("mesh.ply"), b""), Err(IoError::UnknownFormat(_))));
    }
}
