//! Simplices as ordered vertex tuples, their carriers and k-magnitudes.
//!
//! The carrier of `[v0, ..., vk]` is the join `v0 ∨ ... ∨ vk`: a line for an
//! edge, a plane for a triangle, a scalar for a tetrahedron. Its Euclidean
//! norm is `k!` times the simplex's length, area or volume. The same quantity
//! is available from the boundary facets as the ideal norm of their signed sum.

use arrayvec::ArrayVec;

use crate::pga::{point_at, Multivector, PgaError, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimplexError {
    #[error("a simplex needs at least one vertex")]
    Empty,
    #[error("{0} vertices given; 3D simplices have at most 4")]
    TooManyVertices(usize),
    #[error("vertex {0} is an ideal point and cannot be normalized")]
    IdealVertex(usize),
}

const FACTORIAL: [f64; 4] = [1.0, 1.0, 2.0, 6.0];

/// An oriented k-simplex with `k + 1 ≤ 4` unit-weight vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: ArrayVec<Multivector, 4>,
}

impl Simplex {
    /// Build from grade-3 points; each is divided by its weight.
    pub fn new(points: &[Multivector]) -> Result<Self, SimplexError> {
        if points.is_empty() {
            return Err(SimplexError::Empty);
        }
        if points.len() > 4 {
            return Err(SimplexError::TooManyVertices(points.len()));
        }
        let mut vertices = ArrayVec::new();
        for (i, p) in points.iter().enumerate() {
            let w = p.weight();
            if w.abs() <= DEFAULT_TOLERANCE {
                return Err(SimplexError::IdealVertex(i));
            }
            vertices.push(p.grade(3) / w);
        }
        Ok(Simplex { vertices })
    }

    pub fn from_positions(positions: &[[f64; 3]]) -> Result<Self, SimplexError> {
        if positions.len() > 4 {
            return Err(SimplexError::TooManyVertices(positions.len()));
        }
        let pts: ArrayVec<Multivector, 4> = positions.iter().map(|&p| point_at(p)).collect();
        Self::new(&pts)
    }

    /// The dimension k (number of vertices minus one).
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Multivector] {
        &self.vertices
    }

    /// `v0 ∨ v1 ∨ ... ∨ vk`.
    pub fn carrier(&self) -> Multivector {
        let mut it = self.vertices.iter();
        let first = *it.next().expect("non-empty");
        it.fold(first, |acc, v| acc.join(v))
    }

    /// `‖carrier‖ / k!`: 1 for a vertex, length, area or volume.
    pub fn magnitude(&self) -> f64 {
        self.carrier().norm() / FACTORIAL[self.dimension()]
    }

    /// `∂[v0..vk] = Σ (-1)^i [v0..v̸i..vk]`; empty for a vertex.
    pub fn boundary(&self) -> Chain {
        let k = self.dimension();
        let mut chain = Chain::default();
        if k == 0 {
            return chain;
        }
        for i in 0..=k {
            let mut face = self.vertices.clone();
            face.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            chain.push(sign, Simplex { vertices: face });
        }
        chain
    }

    /// The magnitude recomputed from the boundary facets:
    /// `‖Σ S(∂σ)‖∞ / k!`. Zero for a vertex.
    pub fn magnitude_from_boundary(&self) -> f64 {
        let k = self.dimension();
        if k == 0 {
            return 0.0;
        }
        self.boundary().carrier_sum().ideal_norm() / FACTORIAL[k]
    }

    /// Vertex average, a unit-weight point.
    pub fn centroid(&self) -> Multivector {
        let n = self.vertices.len() as f64;
        self.vertices.iter().copied().sum::<Multivector>() / n
    }

    /// Exchange two vertices (flips orientation).
    pub fn swapped(&self, i: usize, j: usize) -> Simplex {
        let mut s = self.clone();
        s.vertices.swap(i, j);
        s
    }

    /// Apply a motor to every vertex.
    pub fn transformed(&self, motor: &Multivector) -> Result<Simplex, PgaError> {
        let mut vertices = ArrayVec::new();
        for v in &self.vertices {
            let w = motor.sandwich(v)?;
            vertices.push(w / w.weight());
        }
        Ok(Simplex { vertices })
    }

    /// Extend by an apex vertex (simplicial extension).
    pub fn extended(&self, apex: Multivector) -> Result<Simplex, SimplexError> {
        let mut pts: Vec<Multivector> = self.vertices.to_vec();
        pts.push(apex);
        Simplex::new(&pts)
    }

    /// Permutation sign mapping `other`'s vertex order to ours, if both hold
    /// exactly the same vertices.
    fn permutation_sign(&self, other: &Simplex) -> Option<i64> {
        if self.vertices.len() != other.vertices.len() {
            return None;
        }
        let mut perm = ArrayVec::<usize, 4>::new();
        for v in &other.vertices {
            let pos = self.vertices.iter().position(|w| w == v)?;
            if perm.contains(&pos) {
                return None;
            }
            perm.push(pos);
        }
        let mut inversions = 0;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }
}

/// A formal integer combination of equal-dimension simplices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Chain {
    terms: Vec<(i64, Simplex)>,
}

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, coefficient: i64, simplex: Simplex) {
        self.terms.push((coefficient, simplex));
    }

    pub fn terms(&self) -> &[(i64, Simplex)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ c · S(σ)`.
    pub fn carrier_sum(&self) -> Multivector {
        self.terms.iter().map(|(c, s)| s.carrier() * *c as f64).sum()
    }

    pub fn boundary(&self) -> Chain {
        let mut out = Chain::default();
        for (c, s) in &self.terms {
            for (c2, f) in s.boundary().terms {
                out.push(c * c2, f);
            }
        }
        out
    }

    /// Merge terms over the same vertex set (respecting orientation) and drop
    /// zero coefficients.
    pub fn simplified(&self) -> Chain {
        let mut out: Vec<(i64, Simplex)> = Vec::new();
        'terms: for (c, s) in &self.terms {
            for (oc, os) in out.iter_mut() {
                if let Some(sign) = os.permutation_sign(s) {
                    *oc += sign * c;
                    continue 'terms;
                }
            }
            out.push((*c, s.clone()));
        }
        out.retain(|(c, _)| *c != 0);
        Chain { terms: out }
    }
}

impl FromIterator<(i64, Simplex)> for Chain {
    fn from_iter<I: IntoIterator<Item = (i64, Simplex)>>(iter: I) -> Self {
        Chain { terms: iter.into_iter().collect() }
    }
}

/// `‖Σ vᵢ‖`. For unit-weight points only the e123 weights reach the
/// Euclidean part, so this is exactly the number of points.
pub fn vertex_count(points: &[Multivector]) -> f64 {
    points.iter().copied().sum::<Multivector>().norm()
}
