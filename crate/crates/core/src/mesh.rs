//! Triangle meshes measured from their summed face carriers.
//!
//! Every face `[v0, v1, v2]` contributes the plane `F = v0 ∨ v1 ∨ v2`. The
//! sum `ΣF` vanishes in its Euclidean part for a closed oriented mesh, its
//! ideal part holds six times the enclosed volume, and for an open mesh the
//! Euclidean part measures the gap.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::pga::{origin, point_at, Multivector, PgaError, DEFAULT_TOLERANCE};
use crate::reduce::{sum_lanes, SumOptions};
use crate::simplex::{Chain, Simplex};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeshError {
    #[error("malformed mesh: face {face} refers to vertex {index}, but there are {count} vertices")]
    IndexOutOfRange { face: usize, index: usize, count: usize },
    #[error("malformed mesh: face {face} repeats vertex {index}")]
    RepeatedIndex { face: usize, index: usize },
    #[error("malformed mesh: vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("a polygon needs at least 3 points, got {0}")]
    TooFewPoints(usize),
}

/// Conditions that do not stop a computation but qualify its result.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// `‖ΣF‖` exceeds the tolerance: signed results depend on the apex.
    OpenMesh { defect: f64 },
    /// Total volume is (numerically) zero, so no centroid exists.
    ZeroVolume,
    /// Some edges are not used exactly twice in opposite directions.
    InconsistentEdges { inconsistent: usize, boundary: usize, non_manifold: usize },
    /// Faces whose carrier is negligible.
    Degenerate { faces: usize },
}

/// Tolerance and summation settings shared by the measuring functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureOptions {
    pub sum: SumOptions,
    /// Relative tolerance for closedness and degeneracy tests.
    pub tolerance: f64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions { sum: SumOptions::default(), tolerance: DEFAULT_TOLERANCE }
    }
}

/// Indexed triangle mesh with cached face carriers.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    positions: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
    carriers: Vec<Multivector>,
    totals: OnceLock<AccumulatedCarrier>,
}

impl TriMesh {
    pub fn new(positions: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        if let Some(i) = positions.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(MeshError::NonFinite(i));
        }
        let count = positions.len();
        for (face, f) in faces.iter().enumerate() {
            for (k, &index) in f.iter().enumerate() {
                if index >= count {
                    return Err(MeshError::IndexOutOfRange { face, index, count });
                }
                if f[..k].contains(&index) {
                    return Err(MeshError::RepeatedIndex { face, index });
                }
            }
        }
        let carriers = faces
            .iter()
            .map(|f| point_at(positions[f[0]]).join(&point_at(positions[f[1]])).join(&point_at(positions[f[2]])))
            .collect();
        Ok(TriMesh { positions, faces, carriers, totals: OnceLock::new() })
    }

    pub fn empty() -> Self {
        TriMesh { positions: Vec::new(), faces: Vec::new(), carriers: Vec::new(), totals: OnceLock::new() }
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Cached `v0 ∨ v1 ∨ v2` per face.
    pub fn carriers(&self) -> &[Multivector] {
        &self.carriers
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn face_points(&self, i: usize) -> [Multivector; 3] {
        self.faces[i].map(|v| point_at(self.positions[v]))
    }

    pub fn face_simplex(&self, i: usize) -> Simplex {
        Simplex::new(&self.face_points(i)).expect("unit-weight points")
    }

    /// Face sums with default options, computed once and cached.
    pub fn totals(&self) -> &AccumulatedCarrier {
        self.totals.get_or_init(|| sum_face_carriers_with(self, &MeasureOptions::default()))
    }

    /// Largest distance of a vertex from the bounding-box center.
    pub fn bounding_radius(&self) -> f64 {
        if self.positions.is_empty() {
            return 0.0;
        }
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &self.positions {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let c = [0, 1, 2].map(|k| 0.5 * (lo[k] + hi[k]));
        self.positions
            .iter()
            .map(|p| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)).sqrt())
            .fold(0.0, f64::max)
    }

    /// The same mesh without the listed faces.
    pub fn without_faces(&self, drop: &[usize]) -> TriMesh {
        let faces = self.faces.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, f)| *f).collect();
        TriMesh::new(self.positions.clone(), faces).expect("subset of a valid mesh")
    }

    /// Reverse the winding of the listed faces.
    pub fn with_flipped_faces(&self, flip: &[usize]) -> TriMesh {
        let faces = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, &[a, b, c])| if flip.contains(&i) { [a, c, b] } else { [a, b, c] })
            .collect();
        TriMesh::new(self.positions.clone(), faces).expect("permutation of a valid mesh")
    }

    pub fn flipped(&self) -> TriMesh {
        let all: Vec<usize> = (0..self.faces.len()).collect();
        self.with_flipped_faces(&all)
    }

    pub fn translated(&self, t: [f64; 3]) -> TriMesh {
        let positions = self.positions.iter().map(|p| [p[0] + t[0], p[1] + t[1], p[2] + t[2]]).collect();
        TriMesh::new(positions, self.faces.clone()).expect("translation keeps coordinates finite")
    }

    /// Apply a motor to every vertex by the sandwich product.
    pub fn transformed(&self, motor: &Multivector) -> Result<TriMesh, PgaError> {
        let mut positions = Vec::with_capacity(self.positions.len());
        for &p in &self.positions {
            let q = motor.sandwich(&point_at(p))?;
            positions.push(q.point_coordinates().ok_or(PgaError::IdealElement)?);
        }
        TriMesh::new(positions, self.faces.clone()).map_err(|_| PgaError::IdealElement)
    }

    /// Concatenate two meshes into one vertex/face list.
    pub fn merged(&self, other: &TriMesh) -> TriMesh {
        let off = self.positions.len();
        let mut positions = self.positions.clone();
        positions.extend_from_slice(&other.positions);
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().map(|f| f.map(|i| i + off)));
        TriMesh::new(positions, faces).expect("union of valid meshes")
    }
}

/// Running sums over a set of faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccumulatedCarrier {
    /// `Σ v0 ∨ v1 ∨ v2`.
    pub f_sum: Multivector,
    /// `Σ (v0 + v1 + v2 + o)(o ∨ v0 ∨ v1 ∨ v2)`; divide by 24 for the
    /// homogeneous center of mass.
    pub com_sum: Multivector,
    pub count: usize,
}

impl AccumulatedCarrier {
    pub const ZERO: AccumulatedCarrier =
        AccumulatedCarrier { f_sum: Multivector::ZERO, com_sum: Multivector::ZERO, count: 0 };
}

pub(crate) fn split_lanes(l: [f64; 32]) -> (Multivector, Multivector) {
    let mut a = [0.0; 16];
    let mut b = [0.0; 16];
    a.copy_from_slice(&l[..16]);
    b.copy_from_slice(&l[16..]);
    (Multivector(a), Multivector(b))
}

pub(crate) fn join_lanes(a: Multivector, b: Multivector) -> [f64; 32] {
    let mut l = [0.0; 32];
    l[..16].copy_from_slice(&a.0);
    l[16..].copy_from_slice(&b.0);
    l
}

/// The c.o.m. term of the tetrahedron `[apex, v0, v1, v2]`.
pub(crate) fn com_term(v: &[Multivector; 3], carrier: &Multivector, apex: &Multivector) -> Multivector {
    let s = apex.join(carrier).scalar_part();
    (v[0] + v[1] + v[2] + *apex) * s
}

pub fn sum_face_carriers(m: &TriMesh) -> AccumulatedCarrier {
    sum_face_carriers_with(m, &MeasureOptions::default())
}

/// Sum the cached carriers and c.o.m. terms (apex at the origin).
pub fn sum_face_carriers_with(m: &TriMesh, opts: &MeasureOptions) -> AccumulatedCarrier {
    sum_face_carriers_about(m, &origin(), opts)
}

pub fn sum_face_carriers_about(m: &TriMesh, apex: &Multivector, opts: &MeasureOptions) -> AccumulatedCarrier {
    let lanes = sum_lanes(m.face_count(), opts.sum, |i| {
        let f = m.carriers[i];
        join_lanes(f, com_term(&m.face_points(i), &f, apex))
    });
    let (f_sum, com_sum) = split_lanes(lanes);
    AccumulatedCarrier { f_sum, com_sum, count: m.face_count() }
}

fn sum_of_norms(m: &TriMesh, opts: &MeasureOptions) -> f64 {
    sum_lanes::<1, _>(m.face_count(), opts.sum, |i| [m.carriers[i].norm()])[0]
}

/// `½ Σ ‖Fᵢ‖`.
pub fn mesh_area(m: &TriMesh) -> f64 {
    mesh_area_with(m, &MeasureOptions::default())
}

pub fn mesh_area_with(m: &TriMesh, opts: &MeasureOptions) -> f64 {
    0.5 * sum_of_norms(m, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshVolume {
    /// `(1/6) o ∨ ΣF`.
    pub signed: f64,
    /// `(1/6) ‖ΣF‖∞`.
    pub unsigned: f64,
    /// `‖ΣF‖`, zero for a closed mesh.
    pub closedness_defect: f64,
    pub warnings: Vec<Warning>,
}

pub fn mesh_volume(m: &TriMesh) -> MeshVolume {
    mesh_volume_with(m, &MeasureOptions::default())
}

pub fn mesh_volume_with(m: &TriMesh, opts: &MeasureOptions) -> MeshVolume {
    let acc = sum_face_carriers_with(m, opts);
    let defect = acc.f_sum.norm();
    let mut warnings = Vec::new();
    if is_open(defect, m, opts) {
        warnings.push(Warning::OpenMesh { defect });
    }
    MeshVolume {
        signed: origin().join(&acc.f_sum).scalar_part() / 6.0,
        unsigned: acc.f_sum.ideal_norm() / 6.0,
        closedness_defect: defect,
        warnings,
    }
}

fn is_open(defect: f64, m: &TriMesh, opts: &MeasureOptions) -> bool {
    defect > opts.tolerance * sum_of_norms(m, opts).max(f64::MIN_POSITIVE)
}

/// `½ ‖ΣF‖`: the area of the missing facets when they share a plane, a
/// lower bound otherwise.
pub fn gap_magnitude(m: &TriMesh) -> f64 {
    0.5 * sum_face_carriers(m).f_sum.norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonArea {
    /// Area with the sign of the polygon's winding: positive when the normal
    /// points along +z (or +y, then +x, for polygons perpendicular to those).
    pub signed: f64,
    /// `½ ‖ΣE‖∞`.
    pub unsigned: f64,
    /// `o ∨ ΣE`, the polygon's plane (through the origin if the polygon is)
    /// weighted with twice its area.
    pub carrier: Multivector,
    /// `Σ Eᵢ` over the cyclic edges.
    pub edge_sum: Multivector,
}

fn edge_sum(points: &[[f64; 3]]) -> Result<Multivector, MeshError> {
    if points.len() < 3 {
        return Err(MeshError::TooFewPoints(points.len()));
    }
    let n = points.len();
    Ok((0..n).map(|i| point_at(points[i]).join(&point_at(points[(i + 1) % n]))).sum())
}

/// Area of a closed planar polygon from its summed edge lines.
pub fn polygon_area(points: &[[f64; 3]]) -> Result<PolygonArea, MeshError> {
    polygon_area_about(points, &origin())
}

/// As [`polygon_area`] with the cone apex at `apex` instead of the origin.
pub fn polygon_area_about(points: &[[f64; 3]], apex: &Multivector) -> Result<PolygonArea, MeshError> {
    let e = edge_sum(points)?;
    let carrier = apex.join(&e);
    let [a, b, c, _] = carrier.plane_coefficients();
    let size = 0.5 * carrier.norm();
    let reference = [c, b, a].into_iter().find(|x| x.abs() > DEFAULT_TOLERANCE * (2.0 * size)).unwrap_or(0.0);
    Ok(PolygonArea {
        signed: size.copysign(reference),
        unsigned: 0.5 * e.ideal_norm(),
        carrier,
        edge_sum: e,
    })
}

/// `Σ f(σ) ⊛ S(σ)` over a chain, each term scaled by its coefficient.
pub fn integrate_chain(chain: &Chain, f: impl Fn(&Simplex) -> Multivector) -> Multivector {
    chain.terms().iter().map(|(c, s)| f(s) * s.carrier() * *c as f64).sum()
}

/// `Σ f(σ) ⊛ S(σ)` over the faces of a mesh.
pub fn integrate_mesh(m: &TriMesh, f: impl Fn(&Simplex) -> Multivector) -> Multivector {
    (0..m.face_count()).map(|i| f(&m.face_simplex(i)) * m.carriers[i]).sum()
}

/// The faces of `m`, each extended by `apex` into a tetrahedron `[apex, v0, v1, v2]`.
pub fn cone_chain(m: &TriMesh, apex: Multivector) -> Chain {
    (0..m.face_count())
        .map(|i| {
            let [a, b, c] = m.face_points(i);
            (1, Simplex::new(&[apex, a, b, c]).expect("finite apex"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterOfMass {
    /// `(1/24) Σ (v0+v1+v2+o)(o ∨ F)`; its e123 weight is the signed volume.
    pub homogeneous: Multivector,
    pub volume: f64,
    /// Normalized centroid, absent for zero volume.
    pub centroid: Option<[f64; 3]>,
    pub warnings: Vec<Warning>,
}

impl CenterOfMass {
    pub(crate) fn from_homogeneous(homogeneous: Multivector, scale: f64, tol: f64) -> Self {
        let volume = homogeneous.weight();
        let mut warnings = Vec::new();
        let centroid = if volume.abs() <= tol * scale.max(f64::MIN_POSITIVE) {
            warnings.push(Warning::ZeroVolume);
            None
        } else {
            homogeneous.point_coordinates()
        };
        CenterOfMass { homogeneous, volume, centroid, warnings }
    }
}

pub fn center_of_mass(m: &TriMesh) -> CenterOfMass {
    center_of_mass_with(m, &MeasureOptions::default())
}

pub fn center_of_mass_with(m: &TriMesh, opts: &MeasureOptions) -> CenterOfMass {
    let acc = sum_face_carriers_with(m, opts);
    let scale = m.bounding_radius().powi(3);
    let mut com = CenterOfMass::from_homogeneous(acc.com_sum / 24.0, scale, opts.tolerance);
    let defect = acc.f_sum.norm();
    if is_open(defect, m, opts) {
        com.warnings.push(Warning::OpenMesh { defect });
    }
    com
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub faces: usize,
    /// `‖ΣF‖`.
    pub closedness_defect: f64,
    /// `‖ΣF‖∞`, six times the unsigned volume.
    pub ideal_sum: f64,
    /// Edges used once.
    pub boundary_edges: usize,
    /// Edges used twice in the same direction.
    pub inconsistent_edges: usize,
    /// Edges used more than twice.
    pub non_manifold_edges: usize,
    /// Faces whose carrier is negligible against the largest one.
    pub degenerate_faces: usize,
    pub closed: bool,
    pub consistent: bool,
}

pub fn validate(m: &TriMesh) -> ValidationReport {
    validate_with(m, &MeasureOptions::default())
}

pub fn validate_with(m: &TriMesh, opts: &MeasureOptions) -> ValidationReport {
    // (a, b) with a < b -> (uses a→b, uses b→a)
    let mut edges: HashMap<(usize, usize), (u32, u32)> = HashMap::new();
    for f in &m.faces {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let e = edges.entry((a.min(b), a.max(b))).or_default();
            if a < b {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
    }
    let (mut boundary, mut inconsistent, mut non_manifold) = (0, 0, 0);
    for &(fwd, back) in edges.values() {
        match fwd + back {
            1 => boundary += 1,
            2 if fwd != back => inconsistent += 1,
            2 => {}
            _ => non_manifold += 1,
        }
    }
    let largest = m.carriers.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let degenerate = m.carriers.iter().filter(|c| c.norm() <= opts.tolerance * largest).count();
    let acc = sum_face_carriers_with(m, opts);
    let defect = acc.f_sum.norm();
    ValidationReport {
        vertices: m.vertex_count(),
        faces: m.face_count(),
        closedness_defect: defect,
        ideal_sum: acc.f_sum.ideal_norm(),
        boundary_edges: boundary,
        inconsistent_edges: inconsistent,
        non_manifold_edges: non_manifold,
        degenerate_faces: degenerate,
        closed: !is_open(defect, m, opts),
        consistent: boundary == 0 && inconsistent == 0 && non_manifold == 0,
    }
}

impl ValidationReport {
    pub fn warnings(&self) -> Vec<Warning> {
        let mut w = Vec::new();
        if !self.closed {
            w.push(Warning::OpenMesh { defect: self.closedness_defect });
        }
        if !self.consistent {
            w.push(Warning::InconsistentEdges {
                inconsistent: self.inconsistent_edges,
                boundary: self.boundary_edges,
                non_manifold: self.non_manifold_edges,
            });
        }
        if self.degenerate_faces > 0 {
            w.push(Warning::Degenerate { faces: self.degenerate_faces });
        }
        w
    }
}
