use std::fmt;

use crate::signature::Signature;

/// A basis blade stored as a bitmask; bit `i` set means generator `e_{i+1}` is a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisBlade(pub u32);

impl BasisBlade {
    pub const SCALAR: BasisBlade = BasisBlade(0);

    pub fn generator(i: usize) -> Self {
        BasisBlade(1 << i)
    }

    /// Canonical blade for the ordered product of generators, with the sign
    /// picked up by sorting. Repeated indices are not allowed.
    pub fn from_indices(indices: &[usize]) -> (i8, BasisBlade) {
        let mut sign = 1i8;
        let mut mask = 0u32;
        for &i in indices {
            let bit = 1u32 << i;
            assert!(mask & bit == 0, "repeated generator {i}");
            // moving e_i left past every higher generator already present
            if (mask >> (i + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        (sign, BasisBlade(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |i| m & (1 << i) != 0)
    }

    /// Sign of `b b~`, i.e. the product of the generator squares (0 if any is null).
    pub fn square_norm_sign(self, sig: &Signature) -> i8 {
        self.indices().map(|i| sig.square(i)).product()
    }
}

impl fmt::Display for BasisBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "e{}", i + 1)?;
        }
        Ok(())
    }
}

/// Sign from bringing the concatenation `a b` into canonical order.
pub fn reordering_sign(a: u32, b: u32) -> i8 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Geometric product of two basis blades: returns the sign and the resulting blade.
/// The sign is 0 when a shared generator is null.
pub fn basis_product(a: BasisBlade, b: BasisBlade, sig: &Signature) -> (i8, BasisBlade) {
    let mut sign = reordering_sign(a.0, b.0);
    let mut common = a.0 & b.0;
    while common != 0 {
        let i = common.trailing_zeros() as usize;
        sign *= sig.square(i);
        if sign == 0 {
            break;
        }
        common &= common - 1;
    }
    (sign, BasisBlade(a.0 ^ b.0))
}
