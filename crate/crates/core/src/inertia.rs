//! Second moments as frames of three vectors, and their diagonalization by
//! rotors.
//!
//! A frame `[I1, I2, I3]` stands for the symmetric matrix whose columns are
//! the Euclidean vectors `Ii`. A rotor `R` acts on it by similarity,
//! `M ↦ Q M Qᵀ` with `Q` the rotation `x ↦ R x R̃`.

use crate::mesh::{center_of_mass_with, MeasureOptions, TriMesh, Warning};
use crate::pga::{origin, Blade, Multivector, PgaError, DEFAULT_TOLERANCE};
use crate::reduce::sum_lanes;

const AXES: [Blade; 3] = [Blade::E1, Blade::E2, Blade::E3];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InertiaError {
    #[error("frame is not symmetric (asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("rotor is not unit (|R R̃ - 1| = {0:e})")]
    NonUnitRotor(f64),
    #[error("Jacobi iteration did not converge in {} sweeps", .partial.sweeps)]
    NoConvergence { partial: Box<EigenResult> },
    #[error(transparent)]
    Algebra(#[from] PgaError),
}

/// Three Euclidean vectors, the columns of a symmetric 3×3 tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaFrame {
    pub columns: [Multivector; 3],
}

impl InertiaFrame {
    pub const ZERO: InertiaFrame = InertiaFrame { columns: [Multivector::ZERO; 3] };

    /// From a row-major matrix; column `j` becomes `I_j`.
    pub fn from_matrix(m: [[f64; 3]; 3]) -> Self {
        InertiaFrame { columns: [0, 1, 2].map(|j| Multivector::vector(m[0][j], m[1][j], m[2][j])) }
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        Self::from_matrix([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    /// `e_r · I_c`.
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.columns[c][AXES[r]]
    }

    pub fn to_matrix(&self) -> [[f64; 3]; 3] {
        [0, 1, 2].map(|r| [0, 1, 2].map(|c| self.entry(r, c)))
    }

    pub fn trace(&self) -> f64 {
        (0..3).map(|i| self.entry(i, i)).sum()
    }

    pub fn determinant(&self) -> f64 {
        let m = self.to_matrix();
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs(&self) -> f64 {
        self.to_matrix().iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> f64 {
        [(0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)].iter().fold(0.0, |m, &(r, c)| m.max(self.entry(r, c).abs()))
    }

    pub fn asymmetry(&self) -> f64 {
        [(0, 1), (0, 2), (1, 2)].iter().fold(0.0, |m, &(r, c)| m.max((self.entry(r, c) - self.entry(c, r)).abs()))
    }

    fn scaled(&self, s: f64) -> Self {
        InertiaFrame { columns: self.columns.map(|c| c * s) }
    }
}

fn coords(v: &Multivector) -> [f64; 3] {
    v.point_coordinates().unwrap_or([0.0; 3])
}

/// Unscaled inertia frame of the solid tetrahedron `[o, v1, v2, v3]`.
///
/// Weighted by `o ∨ v1 ∨ v2 ∨ v3` and divided by 60 it gives the inertia
/// about the origin at unit density.
pub fn tet_inertia_frame(v1: &Multivector, v2: &Multivector, v3: &Multivector) -> InertiaFrame {
    let p = [coords(v1), coords(v2), coords(v3)];
    // X holds the x coordinates of the three points, X' the same cyclically shifted
    let axis = |k: usize| Multivector::vector(p[0][k], p[1][k], p[2][k]);
    let shifted = |k: usize| Multivector::vector(p[1][k], p[2][k], p[0][k]);
    let dot = |a: &Multivector, b: &Multivector| a.dot(b).scalar_part();
    let (x, y, z) = (axis(0), axis(1), axis(2));
    let (xs, ys, zs) = (shifted(0), shifted(1), shifted(2));
    let ix = dot(&x, &(x + xs));
    let iy = dot(&y, &(y + ys));
    let iz = dot(&z, &(z + zs));
    let cross = |a: &Multivector, b: &Multivector, a_s: &Multivector, b_s: &Multivector| {
        -dot(a, b) - 0.5 * (dot(a, b_s) + dot(b, a_s))
    };
    let ixy = cross(&x, &y, &xs, &ys);
    let ixz = cross(&x, &z, &xs, &zs);
    let iyz = cross(&y, &z, &ys, &zs);
    InertiaFrame {
        columns: [
            Multivector::vector(iy + iz, ixy, ixz),
            Multivector::vector(ixy, iz + ix, iyz),
            Multivector::vector(ixz, iyz, ix + iy),
        ],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshInertia {
    /// Unit-density inertia about the origin, `(1/60) Σ Iᵢ (o ∨ v0 ∨ v1 ∨ v2)`.
    pub raw: InertiaFrame,
    /// `raw / volume`; absent for zero volume.
    pub per_unit_mass: Option<InertiaFrame>,
    pub volume: f64,
    /// Where the mesh was translated from, if the inertia is about its c.o.m.
    pub center: Option<[f64; 3]>,
    pub warnings: Vec<Warning>,
}

pub fn mesh_inertia(m: &TriMesh) -> MeshInertia {
    mesh_inertia_with(m, &MeasureOptions::default())
}

pub fn mesh_inertia_with(m: &TriMesh, opts: &MeasureOptions) -> MeshInertia {
    let o = origin();
    let lanes = sum_lanes::<10, _>(m.face_count(), opts.sum, |i| {
        let [a, b, c] = m.face_points(i);
        let f = m.carriers()[i];
        let s = o.join(&f).scalar_part();
        let frame = tet_inertia_frame(&a, &b, &c);
        let mut l = [0.0; 10];
        for col in 0..3 {
            for row in 0..3 {
                l[3 * col + row] = frame.entry(row, col) * s;
            }
        }
        l[9] = s;
        l
    });
    let mut mat = [[0.0; 3]; 3];
    for col in 0..3 {
        for row in 0..3 {
            mat[row][col] = lanes[3 * col + row] / 60.0;
        }
    }
    let raw = InertiaFrame::from_matrix(mat);
    let volume = lanes[9] / 6.0;
    let mut warnings = Vec::new();
    let defect = m.totals().f_sum.norm();
    let area = 0.5 * m.carriers().iter().map(|c| c.norm()).sum::<f64>();
    if defect > opts.tolerance * (2.0 * area).max(f64::MIN_POSITIVE) {
        warnings.push(Warning::OpenMesh { defect });
    }
    let scale = m.bounding_radius().powi(3);
    let per_unit_mass = if volume.abs() > opts.tolerance * scale.max(f64::MIN_POSITIVE) {
        Some(raw.scaled(1.0 / volume))
    } else {
        warnings.push(Warning::ZeroVolume);
        None
    };
    MeshInertia { raw, per_unit_mass, volume, center: None, warnings }
}

/// Inertia about the mesh's own center of mass.
pub fn mesh_inertia_about_com(m: &TriMesh, opts: &MeasureOptions) -> MeshInertia {
    let com = center_of_mass_with(m, opts);
    match com.centroid {
        Some(c) => {
            let mut r = mesh_inertia_with(&m.translated(c.map(|x| -x)), opts);
            r.center = Some(c);
            r
        }
        None => mesh_inertia_with(m, opts),
    }
}

fn check_unit(r: &Multivector) -> Result<(), InertiaError> {
    let dev = (*r * r.reverse()).distance_max(&Multivector::scalar(1.0));
    if dev > DEFAULT_TOLERANCE {
        return Err(InertiaError::NonUnitRotor(dev));
    }
    Ok(())
}

/// `I′ᵢ = Σⱼ R ((R̃ eᵢ R) · eⱼ) Iⱼ R̃`, the matrix conjugation `Q M Qᵀ`.
pub fn similarity(r: &Multivector, f: &InertiaFrame) -> Result<InertiaFrame, InertiaError> {
    check_unit(r)?;
    Ok(similarity_unchecked(r, f))
}

fn similarity_unchecked(r: &Multivector, f: &InertiaFrame) -> InertiaFrame {
    let rev = r.reverse();
    let columns = AXES.map(|ei| {
        let w = rev * Multivector::basis(ei) * *r;
        let mixed: Multivector = (0..3).map(|j| f.columns[j] * w.dot(&Multivector::basis(AXES[j])).scalar_part()).sum();
        (*r * mixed * rev).grade(1)
    });
    InertiaFrame { columns }
}

/// Rotation matrix of `x ↦ R x R̃`, row-major.
pub fn rotor_matrix(r: &Multivector) -> [[f64; 3]; 3] {
    let rev = r.reverse();
    let cols = AXES.map(|e| (*r * Multivector::basis(e) * rev).euclidean_vector());
    [0, 1, 2].map(|i| [cols[0][i], cols[1][i], cols[2][i]])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    /// Off-diagonals below `threshold · max |entry|` count as zero.
    pub threshold: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions { threshold: 1e-12, max_sweeps: 32 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Unit rotor with `similarity(rotor, input) = diag(moments)`.
    pub rotor: Multivector,
    /// Descending.
    pub moments: [f64; 3],
    pub sweeps: usize,
    /// The transformed frame.
    pub frame: InertiaFrame,
}

impl EigenResult {
    /// Eigenvectors of the input frame, `R̃ eᵢ R`, matching `moments`.
    pub fn eigenvectors(&self) -> [[f64; 3]; 3] {
        let rev = self.rotor.reverse();
        AXES.map(|e| (rev * Multivector::basis(e) * self.rotor).euclidean_vector())
    }

    /// The 8 even-grade coefficients `[1, e01, e02, e03, e12, e31, e23, e0123]`.
    pub fn rotor_coefficients(&self) -> [f64; 8] {
        [Blade::Scalar, Blade::E01, Blade::E02, Blade::E03, Blade::E12, Blade::E31, Blade::E23, Blade::E0123]
            .map(|b| self.rotor[b])
    }
}

fn plane_bivector(p: usize, q: usize) -> Multivector {
    Multivector::basis(AXES[p]) * Multivector::basis(AXES[q])
}

/// Cyclic Jacobi over the planes (1,2), (1,3), (2,3) with Givens rotors.
pub fn jacobi_diagonalize(f: &InertiaFrame, opts: &JacobiOptions) -> Result<EigenResult, InertiaError> {
    let scale = f.max_abs();
    let asym = f.asymmetry();
    if asym > DEFAULT_TOLERANCE * scale.max(1.0) || !scale.is_finite() {
        return Err(InertiaError::NotSymmetric(asym));
    }
    let tol = opts.threshold * scale;
    let mut frame = *f;
    let mut rotor = Multivector::scalar(1.0);
    let mut sweeps = 0;
    while frame.max_off_diagonal() > tol {
        if sweeps == opts.max_sweeps {
            let partial = EigenResult { rotor, moments: diag(&frame), sweeps, frame };
            return Err(InertiaError::NoConvergence { partial: Box::new(partial) });
        }
        sweeps += 1;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let denom = 2.0 * frame.entry(q, p);
            if denom.abs() <= tol {
                continue;
            }
            let tau = (frame.entry(q, q) - frame.entry(p, p)) / denom;
            let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
            let phi = t.atan();
            let step = (plane_bivector(p, q) * (-0.5 * phi)).exp_euclidean_bivector()?;
            frame = symmetrized(similarity_unchecked(&step, &frame));
            rotor = renormalized(step * rotor);
        }
    }
    // sort descending with quarter turns, which swap two diagonal entries
    for _ in 0..2 {
        for (p, q) in [(0, 1), (1, 2)] {
            if frame.entry(p, p) < frame.entry(q, q) {
                let step = (plane_bivector(p, q) * -std::f64::consts::FRAC_PI_4).exp_euclidean_bivector()?;
                frame = symmetrized(similarity_unchecked(&step, &frame));
                rotor = renormalized(step * rotor);
            }
        }
    }
    Ok(EigenResult { rotor, moments: diag(&frame), sweeps, frame })
}

fn diag(f: &InertiaFrame) -> [f64; 3] {
    [f.entry(0, 0), f.entry(1, 1), f.entry(2, 2)]
}

fn symmetrized(f: InertiaFrame) -> InertiaFrame {
    let mut m = f.to_matrix();
    for (r, c) in [(0, 1), (0, 2), (1, 2)] {
        let avg = 0.5 * (m[r][c] + m[c][r]);
        m[r][c] = avg;
        m[c][r] = avg;
    }
    InertiaFrame::from_matrix(m)
}

fn renormalized(r: Multivector) -> Multivector {
    let r = r.even();
    r / (r * r.reverse()).scalar_part().sqrt()
}

/// Rotate the mesh by the eigen rotor so its principal axes line up with
/// e1, e2, e3 in descending order of moment.
pub fn align_to_eigenframe(m: &TriMesh, e: &EigenResult) -> Result<TriMesh, PgaError> {
    m.transformed(&e.rotor)
}
