//! The JSON result record printed by the command-line tool.

use serde::Serialize;
use serde_json::Value;

use crate::mesh::{ValidationReport, Warning};
use crate::slicer::FillLevel;

pub const SCHEMA: &str = "pgamesh.result/v1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub format: super::Format,
    pub sha256: String,
    pub vertices: usize,
    pub faces: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub epsilon: f64,
    pub weld: f64,
    pub deterministic: bool,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub compute_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureQuantities {
    pub area: f64,
    pub volume: f64,
    pub unsigned_volume: f64,
    pub centroid: Option<[f64; 3]>,
    pub closedness_defect: f64,
    pub gap_magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceQuantities {
    /// `[a, b, c, d]` of the normalized plane.
    pub plane: [f64; 4],
    pub volume: f64,
    pub centroid: Option<[f64; 3]>,
    pub triangles_below: usize,
    pub triangles_split: usize,
    pub used_complement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillQuantities {
    pub normal: [f64; 3],
    pub levels: Vec<FillLevel>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InertiaQuantities {
    pub volume: f64,
    /// Present when the inertia is taken about the center of mass.
    pub center: Option<[f64; 3]>,
    /// Unit-density inertia about the reference point, row-major.
    pub raw: [[f64; 3]; 3],
    /// `raw / volume`, row-major.
    pub per_unit_mass: [[f64; 3]; 3],
    /// Descending principal moments per unit mass.
    pub moments: [f64; 3],
    /// One eigenvector per moment.
    pub eigenvectors: [[f64; 3]; 3],
    /// `[1, e01, e02, e03, e12, e31, e23, e0123]`.
    pub rotor: [f64; 8],
    pub sweeps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantities {
    Measure(MeasureQuantities),
    Slice(SliceQuantities),
    Fill(FillQuantities),
    Inertia(InertiaQuantities),
    Validate(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub schema: &'static str,
    pub command: String,
    pub input: InputInfo,
    /// Lengths, areas and volumes are in model units, squared and cubed.
    pub units: &'static str,
    #[serde(flatten)]
    pub quantities: Quantities,
    pub warnings: Vec<Warning>,
    pub diagnostics: Vec<String>,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn all_finite(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.as_f64().is_some_and(f64::is_finite),
        Value::Array(a) => a.iter().all(all_finite),
        Value::Object(o) => o.values().all(all_finite),
        _ => true,
    }
}

impl ResultRecord {
    /// Pretty JSON, or `None` if some quantity is not finite (serde_json
    /// would print it as `null`).
    pub fn to_json(&self) -> Option<String> {
        let value = serde_json::to_value(self).ok()?;
        let finite = all_finite(&value) && !contains_nonfinite(self);
        finite.then(|| serde_json::to_string_pretty(&value).expect("serializable"))
    }
}

fn contains_nonfinite(r: &ResultRecord) -> bool {
    let nums: Vec<f64> = match &r.quantities {
        Quantities::Measure(m) => vec![m.area, m.volume, m.unsigned_volume, m.closedness_defect, m.gap_magnitude],
        Quantities::Slice(s) => vec![s.volume],
        Quantities::Fill(f) => f.levels.iter().flat_map(|l| [l.level, l.volume]).collect(),
        Quantities::Inertia(i) => i.moments.iter().chain(i.rotor.iter()).copied().chain([i.volume]).collect(),
        Quantities::Validate(v) => vec![v.closedness_defect, v.ideal_sum],
    };
    nums.iter().any(|x| !x.is_finite())
}
