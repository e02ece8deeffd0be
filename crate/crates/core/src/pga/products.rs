use super::table::{DUAL, GEOMETRIC, GRADES, OUTER};
use super::Multivector;

fn apply_table(a: &Multivector, b: &Multivector, t: &[[super::table::Entry; 16]; 16]) -> Multivector {
    let mut out = [0.0; 16];
    for (i, row) in t.iter().enumerate() {
        let ai = a.0[i];
        for (j, e) in row.iter().enumerate() {
            if e.sign != 0 {
                out[e.slot as usize] += f64::from(e.sign) * ai * b.0[j];
            }
        }
    }
    Multivector(out)
}

impl Multivector {
    /// Geometric product `a ⊛ b`.
    pub fn geometric(&self, rhs: &Multivector) -> Multivector {
        apply_table(self, rhs, &GEOMETRIC)
    }

    /// Outer product `a ∧ b` (the meet).
    pub fn wedge(&self, rhs: &Multivector) -> Multivector {
        apply_table(self, rhs, &OUTER)
    }

    /// Regressive product `a ∨ b = undual(dual(a) ∧ dual(b))` (the join).
    pub fn join(&self, rhs: &Multivector) -> Multivector {
        self.dual().wedge(&rhs.dual()).undual()
    }

    /// Right-complement Hodge dual, fixed by `e_J ⊛ dual(e_J) = e0123`.
    pub fn dual(&self) -> Multivector {
        let mut out = [0.0; 16];
        for (i, e) in DUAL.iter().enumerate() {
            out[e.slot as usize] = f64::from(e.sign) * self.0[i];
        }
        Multivector(out)
    }

    /// Inverse of [`Multivector::dual`].
    pub fn undual(&self) -> Multivector {
        let mut out = [0.0; 16];
        for (i, e) in DUAL.iter().enumerate() {
            out[i] = f64::from(e.sign) * self.0[e.slot as usize];
        }
        Multivector(out)
    }

    /// Reversion: negates grades 2 and 3.
    pub fn reverse(&self) -> Multivector {
        let mut out = self.0;
        for (c, g) in out.iter_mut().zip(GRADES) {
            if g == 2 || g == 3 {
                *c = -*c;
            }
        }
        Multivector(out)
    }

    /// Grade involution: negates odd grades.
    pub fn grade_involute(&self) -> Multivector {
        let mut out = self.0;
        for (c, g) in out.iter_mut().zip(GRADES) {
            if g % 2 == 1 {
                *c = -*c;
            }
        }
        Multivector(out)
    }

    /// Projection onto grade `k` (zero for `k > 4`).
    pub fn grade(&self, k: usize) -> Multivector {
        let mut out = [0.0; 16];
        for (i, g) in GRADES.iter().enumerate() {
            if *g as usize == k {
                out[i] = self.0[i];
            }
        }
        Multivector(out)
    }

    /// Contraction: for each pair of homogeneous parts of grades `r` and `s`,
    /// the grade `|r - s|` part of their geometric product. On two vectors
    /// this is the symmetric part of the geometric product.
    pub fn dot(&self, rhs: &Multivector) -> Multivector {
        let mut out = Multivector::ZERO;
        for r in 0..=4 {
            let a = self.grade(r);
            if a.is_zero(0.0) {
                continue;
            }
            for s in 0..=4 {
                let b = rhs.grade(s);
                if b.is_zero(0.0) {
                    continue;
                }
                out += a.geometric(&b).grade(r.abs_diff(s));
            }
        }
        out
    }
}
