use super::{Blade, Multivector, PgaError, DEFAULT_TOLERANCE};

impl Multivector {
    /// Inverse of a versor, `Ṽ / ⟨V Ṽ⟩₀`.
    pub fn versor_inverse(&self) -> Result<Multivector, PgaError> {
        let n2 = (*self * self.reverse()).scalar_part();
        if n2.abs() <= DEFAULT_TOLERANCE * DEFAULT_TOLERANCE {
            return Err(PgaError::DegenerateVersor(n2.abs().sqrt()));
        }
        Ok(self.reverse() / n2)
    }

    /// Apply a versor to `x`. Even versors act as `V x V⁻¹`; odd versors as
    /// `V x₊ V⁻¹ + V̂ x₋ V⁻¹`, so a plane reflected in itself is negated.
    pub fn sandwich(&self, x: &Multivector) -> Result<Multivector, PgaError> {
        let inv = self.versor_inverse()?;
        let (even, odd) = (self.even(), self.odd());
        let scale = self.max_abs();
        let is_even = odd.max_abs() <= DEFAULT_TOLERANCE * scale;
        let is_odd = even.max_abs() <= DEFAULT_TOLERANCE * scale;
        if is_even {
            Ok(*self * *x * inv)
        } else if is_odd {
            Ok(*self * x.even() * inv + self.grade_involute() * x.odd() * inv)
        } else {
            Err(PgaError::MixedParityVersor)
        }
    }

    /// Exponential of a Euclidean bivector `B = θ B̂` with `B̂² = -1`:
    /// `cos θ + sin θ B̂`.
    pub fn exp_euclidean_bivector(&self) -> Result<Multivector, PgaError> {
        let euclidean = [Blade::E12, Blade::E31, Blade::E23];
        for b in Blade::ALL {
            if !euclidean.contains(&b) && self[b] != 0.0 {
                return Err(PgaError::UnsupportedBivector);
            }
        }
        let theta = self.norm();
        if theta == 0.0 {
            return Ok(Multivector::scalar(1.0));
        }
        Ok(Multivector::scalar(theta.cos()) + *self * (theta.sin() / theta))
    }
}

/// Rotor for a rotation by `angle` in the plane of the Euclidean bivector `b`.
pub fn rotor(b: Multivector, angle: f64) -> Result<Multivector, PgaError> {
    let unit = b.normalized()?;
    (unit * (-0.5 * angle)).exp_euclidean_bivector()
}

/// Translator moving points by `t`: `1 + ½ e0 t⃗`, up to the sign convention
/// fixed by the sandwich.
pub fn translator(t: [f64; 3]) -> Multivector {
    let e0 = Multivector::basis(Blade::E0);
    Multivector::scalar(1.0) - e0 * Multivector::vector(t[0], t[1], t[2]) * 0.5
}
