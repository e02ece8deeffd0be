//! Compile-time multiplication tables for ℝ₃,₀,₁.
//!
//! Every basis blade is stored as a bitmask over the generators
//! (`e0 = 1`, `e1 = 2`, `e2 = 4`, `e3 = 8`) together with the sign that
//! relates the named blade to the ascending canonical product. For example
//! `e31 = -e13` and `e032 = -e023`.

/// Generator bitmask of each basis slot.
pub(crate) const MASKS: [u8; 16] = [0, 2, 4, 8, 1, 3, 5, 9, 6, 10, 12, 13, 11, 7, 14, 15];

/// Sign of each named blade relative to its canonical (ascending) form.
pub(crate) const SIGNS: [i8; 16] = [1, 1, 1, 1, 1, 1, 1, 1, 1, -1, 1, -1, 1, -1, 1, 1];

/// Grade of each basis slot.
pub(crate) const GRADES: [u8; 16] = {
    let mut g = [0u8; 16];
    let mut i = 0;
    while i < 16 {
        g[i] = MASKS[i].count_ones() as u8;
        i += 1;
    }
    g
};

const fn slot_of_mask(mask: u8) -> usize {
    let mut i = 0;
    while i < 16 {
        if MASKS[i] == mask {
            return i;
        }
        i += 1;
    }
    panic!("mask not in basis")
}

/// Product of two canonical blades: resulting mask and sign (0 when the
/// degenerate generator meets itself).
const fn canonical_product(a: u8, b: u8) -> (u8, i8) {
    if a & b & 1 != 0 {
        return (a ^ b, 0);
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let low = rest.trailing_zeros();
        swaps += (a >> (low + 1)).count_ones();
        rest &= rest - 1;
    }
    (a ^ b, if swaps % 2 == 0 { 1 } else { -1 })
}

/// Entry of a product table: target slot and sign (0 means the product vanishes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Entry {
    pub slot: u8,
    pub sign: i8,
}

const fn build(outer_only: bool) -> [[Entry; 16]; 16] {
    let mut t = [[Entry { slot: 0, sign: 0 }; 16]; 16];
    let mut i = 0;
    while i < 16 {
        let mut j = 0;
        while j < 16 {
            let (mask, s) = canonical_product(MASKS[i], MASKS[j]);
            let slot = slot_of_mask(mask);
            let vanish = outer_only && (MASKS[i] & MASKS[j]) != 0;
            let sign = if vanish { 0 } else { s * SIGNS[i] * SIGNS[j] * SIGNS[slot] };
            t[i][j] = Entry { slot: slot as u8, sign };
            j += 1;
        }
        i += 1;
    }
    t
}

/// Geometric product table.
pub(crate) const GEOMETRIC: [[Entry; 16]; 16] = build(false);

/// Outer (meet) product table.
pub(crate) const OUTER: [[Entry; 16]; 16] = build(true);

/// Right-complement dual: `e_J * DUAL[J] = e0123`.
pub(crate) const DUAL: [Entry; 16] = {
    let mut t = [Entry { slot: 0, sign: 0 }; 16];
    let mut i = 0;
    while i < 16 {
        let j = slot_of_mask(15 ^ MASKS[i]);
        let e = GEOMETRIC[i][j];
        // e_i e_j = sign * e0123, so the dual of e_i is sign * e_j.
        t[i] = Entry { slot: j as u8, sign: e.sign };
        i += 1;
    }
    t
};

/// For every e0-free slot `j`: `e0 * e_j = sign * e_slot`.
pub(crate) const E0_TIMES: [Entry; 16] = {
    let mut t = [Entry { slot: 0, sign: 0 }; 16];
    let mut j = 0;
    while j < 16 {
        if MASKS[j] & 1 == 0 {
            t[j] = GEOMETRIC[4][j];
        }
        j += 1;
    }
    t
};
