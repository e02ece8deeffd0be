use super::table::{E0_TIMES, MASKS};
use super::{origin, Blade, Multivector, PgaError};

/// `A = A_E + e0 ⊛ A_I`, with both parts in the e0-free subalgebra ℝ₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPair {
    pub euclidean_part: Multivector,
    pub ideal_factor: Multivector,
}

impl SplitPair {
    pub fn recombine(&self) -> Multivector {
        self.euclidean_part + Multivector::basis(Blade::E0) * self.ideal_factor
    }
}

fn is_euclidean_slot(i: usize) -> bool {
    MASKS[i] & 1 == 0
}

impl Multivector {
    /// Euclidean split into the e0-free term and the ideal factor.
    pub fn euclidean_split(&self) -> SplitPair {
        let mut e = [0.0; 16];
        let mut ideal = [0.0; 16];
        for j in 0..16 {
            if is_euclidean_slot(j) {
                e[j] = self.0[j];
                let t = E0_TIMES[j];
                // e0 e_j = sign e_slot, and sign is ±1 here.
                ideal[j] = f64::from(t.sign) * self.0[t.slot as usize];
            }
        }
        SplitPair { euclidean_part: Multivector(e), ideal_factor: Multivector(ideal) }
    }

    /// Euclidean norm `‖A‖ = ‖A_E‖`.
    pub fn norm(&self) -> f64 {
        self.0.iter().enumerate().filter(|(i, _)| is_euclidean_slot(*i)).map(|(_, c)| c * c).sum::<f64>().sqrt()
    }

    /// `‖A‖` computed as `sqrt(⟨Ã A⟩₀)` on the Euclidean part.
    pub fn norm_from_product(&self) -> f64 {
        let e = self.euclidean_split().euclidean_part;
        (e.reverse() * e).scalar_part().max(0.0).sqrt()
    }

    /// Ideal norm `‖A‖∞ = ‖A_I‖`.
    pub fn ideal_norm(&self) -> f64 {
        self.0.iter().enumerate().filter(|(i, _)| !is_euclidean_slot(*i)).map(|(_, c)| c * c).sum::<f64>().sqrt()
    }

    /// `‖A ∨ o‖`, an alternative route to the ideal norm.
    pub fn ideal_norm_via_origin(&self) -> f64 {
        self.join(&origin()).norm()
    }

    /// `‖A*‖`, a third route to the ideal norm.
    pub fn ideal_norm_via_dual(&self) -> f64 {
        self.dual().norm()
    }

    /// Scale to unit Euclidean norm.
    pub fn normalized(&self) -> Result<Multivector, PgaError> {
        self.normalized_with(super::DEFAULT_TOLERANCE)
    }

    pub fn normalized_with(&self, tol: f64) -> Result<Multivector, PgaError> {
        let n = self.norm();
        if n <= tol {
            return Err(PgaError::IdealElement);
        }
        Ok(*self / n)
    }

    /// Scale a purely ideal element to unit ideal norm.
    pub fn ideal_normalized(&self) -> Option<Multivector> {
        let n = self.ideal_norm();
        (n > 0.0).then(|| *self / n)
    }
}
