//! Volume and center of mass of the part of a closed mesh below a plane.
//!
//! Only the mesh faces below the plane are summed. The missing cap lies in
//! the plane, so measuring from an apex `o′` on the plane makes its cone
//! flat and the cap never has to be built.

use arrayvec::ArrayVec;

use crate::mesh::{com_term, join_lanes, split_lanes, CenterOfMass, MeasureOptions, TriMesh, Warning};
use crate::pga::{origin, plane, point_at, Multivector, PgaError, DEFAULT_TOLERANCE};
use crate::reduce::sum_lanes;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SliceError {
    #[error("degenerate plane: the normal has zero length")]
    DegeneratePlane,
    #[error("no finite intersection: the edge is parallel to the plane")]
    NoFiniteIntersection,
    #[error("the point is not on the slicing plane (offset {0:e})")]
    NotOnPlane(f64),
    #[error("the d-coefficient shortcut needs a plane through the origin")]
    NotThroughOrigin,
    #[error("a fill curve needs at least one level")]
    NoLevels,
    #[error(transparent)]
    Algebra(#[from] PgaError),
}

/// A normalized plane `p` and a point `o′` on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePlane {
    p: Multivector,
    o_prime: Multivector,
}

impl SlicePlane {
    /// The plane `ax + by + cz + d = 0`; "below" is where `ax + by + cz + d < 0`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, SliceError> {
        Self::from_multivector(plane(a, b, c, d))
    }

    /// Plane through `point` with `normal` pointing to the "above" side.
    pub fn through_point(point: [f64; 3], normal: [f64; 3]) -> Result<Self, SliceError> {
        let d = -(normal[0] * point[0] + normal[1] * point[1] + normal[2] * point[2]);
        Self::new(normal[0], normal[1], normal[2], d)
    }

    /// From the grade-1 part of `p`. `o′` is the foot of the origin, `(o·p)p⁻¹`.
    pub fn from_multivector(p: Multivector) -> Result<Self, SliceError> {
        let p = p.grade(1);
        if !p.is_finite() {
            return Err(SliceError::DegeneratePlane);
        }
        let p = p.normalized().map_err(|_| SliceError::DegeneratePlane)?;
        // p⁻¹ = p / (p p), and p p = 1 after normalizing
        let foot = (origin().dot(&p) * p).grade(3);
        let o_prime = foot / foot.weight();
        Ok(SlicePlane { p, o_prime })
    }

    /// Replace `o′` by another point, which must lie on the plane.
    pub fn with_o_prime(self, q: Multivector) -> Result<Self, SliceError> {
        if q.weight().abs() <= DEFAULT_TOLERANCE {
            return Err(PgaError::IdealElement.into());
        }
        let q = q.grade(3) / q.weight();
        let off = self.side(&q);
        let scale = q.point_coordinates().map_or(1.0, |c| c.iter().fold(1.0f64, |m, x| m.max(x.abs())));
        if off.abs() > DEFAULT_TOLERANCE * scale {
            return Err(SliceError::NotOnPlane(off));
        }
        Ok(SlicePlane { p: self.p, o_prime: q })
    }

    /// The intersection of a coordinate axis (0, 1, 2 for x, y, z) with the plane.
    pub fn axis_point(&self, axis: usize) -> Result<Multivector, SliceError> {
        let mut dir = [0.0; 3];
        dir[axis] = 1.0;
        edge_plane_intersection(&origin().join(&point_at(dir)), self)
    }

    pub fn p(&self) -> &Multivector {
        &self.p
    }

    pub fn o_prime(&self) -> &Multivector {
        &self.o_prime
    }

    /// `p ∨ v = ax + by + cz + d`, the signed distance for a unit-weight point.
    pub fn side(&self, v: &Multivector) -> f64 {
        self.p.join(v).scalar_part()
    }

    /// The same plane with its sides exchanged.
    pub fn flipped(&self) -> SlicePlane {
        SlicePlane { p: -self.p, o_prime: self.o_prime }
    }

    /// Move plane and `o′` by a motor.
    pub fn transformed(&self, motor: &Multivector) -> Result<SlicePlane, SliceError> {
        let p = motor.sandwich(&self.p)?.grade(1).normalized()?;
        let q = motor.sandwich(&self.o_prime)?.grade(3);
        Ok(SlicePlane { p, o_prime: q / q.weight() })
    }
}

/// `e ∧ p`, normalized to unit weight: the point where the line `e` crosses the plane.
pub fn edge_plane_intersection(e: &Multivector, p: &SlicePlane) -> Result<Multivector, SliceError> {
    let x = e.grade(2).wedge(&p.p);
    let w = x.weight();
    if w.abs() <= DEFAULT_TOLERANCE * e.norm() || w == 0.0 {
        return Err(SliceError::NoFiniteIntersection);
    }
    Ok(x / w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipOptions {
    pub measure: MeasureOptions,
    /// Vertices with `|p ∨ v| < epsilon · bounding radius` count as on the plane.
    pub epsilon: f64,
    /// Sum the part above instead when most vertices are below.
    pub complement: bool,
}

impl Default for ClipOptions {
    fn default() -> Self {
        ClipOptions { measure: MeasureOptions::default(), epsilon: DEFAULT_TOLERANCE, complement: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipResult {
    /// Sum of the face carriers below the plane, split faces included.
    pub f_sum_below: Multivector,
    /// Total minus below.
    pub f_sum_above: Multivector,
    /// `Σ (v0+v1+v2+o′)(o′ ∨ v0 ∨ v1 ∨ v2)` below the plane.
    pub com_accumulator: Multivector,
    /// The apex the accumulator was taken about.
    pub o_prime: Multivector,
    pub triangles_below: usize,
    pub triangles_split: usize,
    pub used_complement: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    On,
    Above,
}

/// What one face contributes below the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    Nothing,
    Full,
    /// A sub-triangle lying below.
    Part([Multivector; 3]),
    /// The full face minus a sub-triangle lying above.
    FullMinus([Multivector; 3]),
}

fn classify(s: f64, tol: f64) -> Side {
    if s.abs() < tol {
        Side::On
    } else if s < 0.0 {
        Side::Below
    } else {
        Side::Above
    }
}

fn crossing(a: &Multivector, b: &Multivector, p: &SlicePlane) -> Multivector {
    // a and b lie strictly on opposite sides, so the edge is never parallel
    edge_plane_intersection(&a.join(b), p).expect("transversal edge")
}

fn piece(v: &[Multivector; 3], p: &SlicePlane, tol: f64) -> Piece {
    let sides = v.map(|x| classify(p.side(&x), tol));
    let above = sides.iter().filter(|s| **s == Side::Above).count();
    let below = sides.iter().filter(|s| **s == Side::Below).count();
    // rotate so the lone vertex (if any) comes first, keeping the winding
    let lone = |want: Side| (0..3).find(|&i| sides[i] == want).expect("present");
    let rot = |i: usize| [v[i], v[(i + 1) % 3], v[(i + 2) % 3]];
    match (above, below) {
        (0, _) => Piece::Full,
        (_, 0) => Piece::Nothing,
        (1, 2) => {
            let [a, b, c] = rot(lone(Side::Above));
            Piece::FullMinus([a, crossing(&a, &b, p), crossing(&a, &c, p)])
        }
        (2, 1) => {
            let [a, b, c] = rot(lone(Side::Below));
            Piece::Part([a, crossing(&a, &b, p), crossing(&a, &c, p)])
        }
        _ => {
            // one below, one above, one on: the above vertex moves to the crossing
            let i = lone(Side::Above);
            let j = lone(Side::Below);
            let mut t = *v;
            t[i] = crossing(&v[j], &v[i], p);
            Piece::Part(t)
        }
    }
}

fn carrier(t: &[Multivector; 3]) -> Multivector {
    t[0].join(&t[1]).join(&t[2])
}

/// Sum of below-plane pieces as `[f_sum, com]` lanes plus the counts.
fn accumulate(m: &TriMesh, p: &SlicePlane, tol: f64, opts: &MeasureOptions) -> ([f64; 32], usize, usize) {
    let apex = p.o_prime;
    let lanes = sum_lanes(m.face_count(), opts.sum, |i| {
        let v = m.face_points(i);
        let full = m.carriers()[i];
        match piece(&v, p, tol) {
            Piece::Nothing => [0.0; 32],
            Piece::Full => join_lanes(full, com_term(&v, &full, &apex)),
            Piece::Part(t) => {
                let f = carrier(&t);
                join_lanes(f, com_term(&t, &f, &apex))
            }
            Piece::FullMinus(t) => {
                let f = carrier(&t);
                join_lanes(full - f, com_term(&v, &full, &apex) - com_term(&t, &f, &apex))
            }
        }
    });
    let (mut whole, mut split) = (0, 0);
    for i in 0..m.face_count() {
        match piece(&m.face_points(i), p, tol) {
            Piece::Full => whole += 1,
            Piece::Part(_) | Piece::FullMinus(_) => split += 1,
            Piece::Nothing => {}
        }
    }
    (lanes, whole, split)
}

fn on_plane_tolerance(m: &TriMesh, eps: f64) -> f64 {
    let r = m.bounding_radius();
    eps * if r > 0.0 { r } else { 1.0 }
}

pub fn clip_below(m: &TriMesh, p: &SlicePlane) -> ClipResult {
    clip_below_with(m, p, &ClipOptions::default())
}

/// Sum the face carriers and c.o.m. terms of the part of `m` below `p`.
pub fn clip_below_with(m: &TriMesh, p: &SlicePlane, opts: &ClipOptions) -> ClipResult {
    let tol = on_plane_tolerance(m, opts.epsilon);
    let totals = m.totals();
    let below_vertices = m.positions().iter().filter(|&&x| p.side(&point_at(x)) < -tol).count();
    let use_complement = opts.complement && 2 * below_vertices > m.vertex_count();
    if use_complement {
        let (lanes, whole, split) = accumulate(m, &p.flipped(), tol, &opts.measure);
        let (f_above, com_above) = split_lanes(lanes);
        ClipResult {
            f_sum_below: totals.f_sum - f_above,
            f_sum_above: f_above,
            com_accumulator: totals.com_sum - com_above,
            o_prime: p.o_prime,
            triangles_below: m.face_count() - whole - split,
            triangles_split: split,
            used_complement: true,
        }
    } else {
        let (lanes, whole, split) = accumulate(m, p, tol, &opts.measure);
        let (f_below, com_below) = split_lanes(lanes);
        ClipResult {
            f_sum_below: f_below,
            f_sum_above: totals.f_sum - f_below,
            com_accumulator: com_below,
            o_prime: p.o_prime,
            triangles_below: whole,
            triangles_split: split,
            used_complement: false,
        }
    }
}

/// `(1/6) o′ ∨ F_below`.
pub fn sliced_volume(r: &ClipResult, p: &SlicePlane) -> f64 {
    p.o_prime.join(&r.f_sum_below).scalar_part() / 6.0
}

/// The two-term form `(1/6)(o ∨ F + ‖F‖ (o ∨ p̄))`: the cone from the origin
/// over the faces plus the cone over the cap, whose carrier is `‖F‖ p̄`.
pub fn sliced_volume_old_form(r: &ClipResult, p: &SlicePlane) -> f64 {
    let o = origin();
    let f = r.f_sum_below;
    (o.join(&f).scalar_part() + f.norm() * o.join(&p.p).scalar_part()) / 6.0
}

/// Homogeneous center of mass of the region below the plane.
pub fn sliced_com(r: &ClipResult) -> CenterOfMass {
    let scale = r.f_sum_below.ideal_norm().max(r.f_sum_above.ideal_norm()).max(1.0);
    let hom = r.com_accumulator / 24.0;
    CenterOfMass::from_homogeneous(hom, scale, DEFAULT_TOLERANCE)
}

/// The e0 coefficient of the plane `v0 ∨ v1 ∨ v2`, written out:
/// `x3(y2 z1 − y1 z2) + x2(y1 z3 − y3 z1) + x1(y3 z2 − y2 z3)`.
pub fn d_coefficient(v1: [f64; 3], v2: [f64; 3], v3: [f64; 3]) -> f64 {
    let ([x1, y1, z1], [x2, y2, z2], [x3, y3, z3]) = (v1, v2, v3);
    x3 * (y2 * z1 - y1 * z2) + x2 * (y1 * z3 - y3 * z1) + x1 * (y3 * z2 - y2 * z3)
}

/// Sliced volume for a plane through the origin from the d-coefficients
/// alone: `−(1/6) Σ d`.
pub fn sliced_volume_d_only(m: &TriMesh, p: &SlicePlane, opts: &ClipOptions) -> Result<f64, SliceError> {
    let tol = on_plane_tolerance(m, opts.epsilon);
    if p.side(&origin()).abs() > tol {
        return Err(SliceError::NotThroughOrigin);
    }
    let xyz = |v: &Multivector| v.point_coordinates().expect("finite point");
    let d = |t: &[Multivector; 3]| d_coefficient(xyz(&t[0]), xyz(&t[1]), xyz(&t[2]));
    let sum = sum_lanes::<1, _>(m.face_count(), opts.measure.sum, |i| {
        let v = m.face_points(i);
        let f = m.faces()[i].map(|k| m.positions()[k]);
        [match piece(&v, p, tol) {
            Piece::Nothing => 0.0,
            Piece::Full => d_coefficient(f[0], f[1], f[2]),
            Piece::Part(t) => d(&t),
            Piece::FullMinus(t) => d_coefficient(f[0], f[1], f[2]) - d(&t),
        }]
    })[0];
    Ok(-sum / 6.0)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FillLevel {
    /// Offset `h` of the plane `n·x = h`.
    pub level: f64,
    pub volume: f64,
    pub centroid: Option<[f64; 3]>,
}

/// Volume and centroid below the planes `n·x = h` for `n_levels` evenly
/// spaced `h` from the lowest to the highest vertex.
pub fn fill_curve(m: &TriMesh, normal: [f64; 3], n_levels: usize, opts: &ClipOptions) -> Result<Vec<FillLevel>, SliceError> {
    if n_levels == 0 {
        return Err(SliceError::NoLevels);
    }
    let len = (normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]).sqrt();
    if !(len > 0.0) || !len.is_finite() {
        return Err(SliceError::DegeneratePlane);
    }
    let n = normal.map(|c| c / len);
    let heights = m.positions().iter().map(|x| n[0] * x[0] + n[1] * x[1] + n[2] * x[2]);
    let lo = heights.clone().fold(f64::INFINITY, f64::min);
    let hi = heights.fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(n_levels);
    for k in 0..n_levels {
        let h = if n_levels == 1 { hi } else { lo + (hi - lo) * k as f64 / (n_levels - 1) as f64 };
        let p = SlicePlane::new(n[0], n[1], n[2], -h)?;
        let r = clip_below_with(m, &p, opts);
        let com = sliced_com(&r);
        out.push(FillLevel { level: h, volume: sliced_volume(&r, &p), centroid: com.centroid });
    }
    Ok(out)
}

/// Warnings for a single slice.
pub fn slice_warnings(m: &TriMesh, r: &ClipResult) -> Vec<Warning> {
    let mut w = Vec::new();
    let opts = MeasureOptions::default();
    let defect = m.totals().f_sum.norm();
    if defect > opts.tolerance * (0.5 * crate::mesh::mesh_area(m)).max(f64::MIN_POSITIVE) {
        w.push(Warning::OpenMesh { defect });
    }
    if sliced_com(r).centroid.is_none() {
        w.push(Warning::ZeroVolume);
    }
    w
}

/// Which sub-triangles a face splits into, for inspection and tests.
pub fn split_face(v: &[Multivector; 3], p: &SlicePlane, tol: f64) -> ArrayVec<(i8, [Multivector; 3]), 2> {
    let mut out = ArrayVec::new();
    match piece(v, p, tol) {
        Piece::Nothing => {}
        Piece::Full => out.push((1, *v)),
        Piece::Part(t) => out.push((1, t)),
        Piece::FullMinus(t) => {
            out.push((1, *v));
            out.push((-1, t));
        }
    }
    out
}
