//! The ℝ₃,₀,₁ algebra: multivectors, products, duality, the Euclidean split,
//! norms and versor actions.
//!
//! Vectors represent planes `a e1 + b e2 + c e3 + d e0`, trivectors represent
//! points `x e032 + y e013 + z e021 + w e123`. Everything else in the crate is
//! written in terms of the operations defined here.

mod products;
mod split;
pub(crate) mod table;
mod versor;

use std::fmt;
use std::ops::{Add, AddAssign, BitAnd, BitXor, Div, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};

pub use split::SplitPair;
pub use versor::{rotor, translator};

/// Default absolute tolerance for zero tests on unit-scale data.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PgaError {
    #[error("degenerate versor: Euclidean norm {0:e} is not invertible")]
    DegenerateVersor(f64),
    #[error("versor mixes even and odd grades")]
    MixedParityVersor,
    #[error("unsupported bivector: only Euclidean bivectors (e12, e31, e23) can be exponentiated")]
    UnsupportedBivector,
    #[error("ideal element; use ideal normalization")]
    IdealElement,
}

/// Basis blades in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(usize)]
pub enum Blade {
    Scalar = 0,
    E1,
    E2,
    E3,
    E0,
    E01,
    E02,
    E03,
    E12,
    E31,
    E23,
    E032,
    E013,
    E021,
    E123,
    E0123,
}

impl Blade {
    pub const ALL: [Blade; 16] = [
        Blade::Scalar,
        Blade::E1,
        Blade::E2,
        Blade::E3,
        Blade::E0,
        Blade::E01,
        Blade::E02,
        Blade::E03,
        Blade::E12,
        Blade::E31,
        Blade::E23,
        Blade::E032,
        Blade::E013,
        Blade::E021,
        Blade::E123,
        Blade::E0123,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn grade(self) -> usize {
        table::GRADES[self as usize] as usize
    }

    /// Whether the blade carries the degenerate factor `e0`.
    pub const fn is_ideal(self) -> bool {
        table::MASKS[self as usize] & 1 != 0
    }

    pub const fn name(self) -> &'static str {
        const NAMES: [&str; 16] = [
            "1", "e1", "e2", "e3", "e0", "e01", "e02", "e03", "e12", "e31", "e23", "e032", "e013", "e021", "e123",
            "e0123",
        ];
        NAMES[self as usize]
    }
}

/// A general element of ℝ₃,₀,₁ on the basis
/// `[1, e1, e2, e3, e0, e01, e02, e03, e12, e31, e23, e032, e013, e021, e123, e0123]`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Multivector(pub [f64; 16]);

impl Multivector {
    pub const ZERO: Multivector = Multivector([0.0; 16]);

    pub const fn from_coefficients(c: [f64; 16]) -> Self {
        Multivector(c)
    }

    pub const fn coefficients(&self) -> &[f64; 16] {
        &self.0
    }

    pub fn basis(blade: Blade) -> Self {
        let mut m = Self::ZERO;
        m.0[blade.index()] = 1.0;
        m
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[0] = s;
        m
    }

    /// Scalar part `⟨A⟩₀`.
    pub fn scalar_part(&self) -> f64 {
        self.0[0]
    }

    /// Euclidean vector `x e1 + y e2 + z e3` (a plane through the origin).
    pub fn vector(x: f64, y: f64, z: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[1] = x;
        m.0[2] = y;
        m.0[3] = z;
        m
    }

    /// The e1, e2, e3 coefficients.
    pub fn euclidean_vector(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.0.iter().all(|c| c.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Largest coefficient difference.
    pub fn distance_max(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Keep only the coefficients for which `keep` holds.
    pub fn filtered(&self, keep: impl Fn(Blade) -> bool) -> Self {
        let mut m = Self::ZERO;
        for b in Blade::ALL {
            if keep(b) {
                m.0[b.index()] = self.0[b.index()];
            }
        }
        m
    }

    /// The even-grade part.
    pub fn even(&self) -> Self {
        self.filtered(|b| b.grade() % 2 == 0)
    }

    /// The odd-grade part.
    pub fn odd(&self) -> Self {
        self.filtered(|b| b.grade() % 2 == 1)
    }
}

/// A finite point at `(x, y, z)` with unit weight:
/// `x e032 + y e013 + z e021 + e123`.
pub fn point(x: f64, y: f64, z: f64) -> Multivector {
    let mut m = Multivector::ZERO;
    m.0[Blade::E032.index()] = x;
    m.0[Blade::E013.index()] = y;
    m.0[Blade::E021.index()] = z;
    m.0[Blade::E123.index()] = 1.0;
    m
}

/// Point from a coordinate triple.
pub fn point_at(p: [f64; 3]) -> Multivector {
    point(p[0], p[1], p[2])
}

/// The plane `ax + by + cz + d = 0` as `a e1 + b e2 + c e3 + d e0`.
pub fn plane(a: f64, b: f64, c: f64, d: f64) -> Multivector {
    let mut m = Multivector::ZERO;
    m.0[1] = a;
    m.0[2] = b;
    m.0[3] = c;
    m.0[4] = d;
    m
}

/// The point at the origin, `e123`.
pub fn origin() -> Multivector {
    Multivector::basis(Blade::E123)
}

impl Multivector {
    /// Weight of a point (its e123 coefficient).
    pub fn weight(&self) -> f64 {
        self.0[Blade::E123.index()]
    }

    /// Cartesian coordinates of a grade-3 point, dividing out its weight.
    /// Returns `None` for ideal points.
    pub fn point_coordinates(&self) -> Option<[f64; 3]> {
        let w = self.weight();
        if w == 0.0 || !w.is_finite() {
            return None;
        }
        Some([
            self.0[Blade::E032.index()] / w,
            self.0[Blade::E013.index()] / w,
            self.0[Blade::E021.index()] / w,
        ])
    }

    /// Plane coefficients `[a, b, c, d]` of the grade-1 part.
    pub fn plane_coefficients(&self) -> [f64; 4] {
        [self.0[1], self.0[2], self.0[3], self.0[4]]
    }
}

impl Index<Blade> for Multivector {
    type Output = f64;
    fn index(&self, b: Blade) -> &f64 {
        &self.0[b.index()]
    }
}

impl IndexMut<Blade> for Multivector {
    fn index_mut(&mut self, b: Blade) -> &mut f64 {
        &mut self.0[b.index()]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector(self.0.map(|c| -c))
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        Multivector(self.0.map(|c| c * s))
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, m: Multivector) -> Multivector {
        m * self
    }
}

impl MulAssign<f64> for Multivector {
    fn mul_assign(&mut self, s: f64) {
        for c in &mut self.0 {
            *c *= s;
        }
    }
}

impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, s: f64) -> Multivector {
        Multivector(self.0.map(|c| c / s))
    }
}

/// Geometric product.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric(&rhs)
    }
}

/// Outer product (meet).
impl BitXor for Multivector {
    type Output = Multivector;
    fn bitxor(self, rhs: Multivector) -> Multivector {
        self.wedge(&rhs)
    }
}

/// Regressive product (join).
impl BitAnd for Multivector {
    type Output = Multivector;
    fn bitand(self, rhs: Multivector) -> Multivector {
        self.join(&rhs)
    }
}

impl std::iter::Sum for Multivector {
    fn sum<I: Iterator<Item = Multivector>>(iter: I) -> Multivector {
        iter.fold(Multivector::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Blade::ALL {
            let c = self.0[b.index()];
            if c == 0.0 {
                continue;
            }
            let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            if b == Blade::Scalar {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "{}", b.name())?;
            } else {
                write!(f, "{mag}{}", b.name())?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}
