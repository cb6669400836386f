use std::collections::BTreeMap;
use std::ops::{BitXor, Mul};

use crate::blade::{basis_product, BasisBlade};
use crate::error::{KernelError, Result};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::signature::Signature;
use crate::tolerance::Tolerances;

/// The bilinear products of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Product {
    Geometric,
    Outer,
    LeftContraction,
    RightContraction,
    Scalar,
}

impl Product {
    /// Whether the blade product of grades `ga`, `gb` landing on grade `gr` contributes.
    pub fn keeps(self, ga: usize, gb: usize, gr: usize) -> bool {
        match self {
            Product::Geometric => true,
            Product::Outer => gr == ga + gb,
            Product::LeftContraction => ga <= gb && gr == gb - ga,
            Product::RightContraction => ga >= gb && gr == ga - gb,
            Product::Scalar => gr == 0,
        }
    }
}

/// What to do with nonzero terms above the stored grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Fail with [`KernelError::TruncationOverflow`].
    #[default]
    Strict,
    /// Drop them.
    Lossy,
}

pub(crate) fn sparse_product<T: Scalar>(a: &[(u32, T)], b: &[(u32, T)], sig: &Signature, kind: Product) -> BTreeMap<u32, T> {
    let mut out: BTreeMap<u32, T> = BTreeMap::new();
    for &(ma, ref ca) in a {
        let ga = ma.count_ones() as usize;
        for &(mb, ref cb) in b {
            let gb = mb.count_ones() as usize;
            let (s, blade) = basis_product(BasisBlade(ma), BasisBlade(mb), sig);
            if s == 0 || !kind.keeps(ga, gb, blade.grade()) {
                continue;
            }
            let v = ca.clone() * cb.clone();
            let entry = out.entry(blade.0).or_insert_with(T::zero);
            *entry = if s > 0 { entry.clone() + v } else { entry.clone() - v };
        }
    }
    out
}

/// Absolute threshold for dropped terms: relative to the operand magnitudes.
pub(crate) fn overflow_tol<T: Scalar>(a: &Multivector<T>, b: &Multivector<T>) -> f64 {
    Tolerances::default().num * 1f64.max(a.max_abs() * b.max_abs())
}

pub(crate) fn sparse_of<T: Scalar>(m: &Multivector<T>) -> BTreeMap<u32, T> {
    m.sparse_terms().into_iter().collect()
}

pub(crate) fn sparse_mul<T: Scalar>(a: &BTreeMap<u32, T>, b: &BTreeMap<u32, T>, sig: &Signature) -> BTreeMap<u32, T> {
    let a: Vec<(u32, T)> = a.iter().map(|(k, v)| (*k, v.clone())).collect();
    let b: Vec<(u32, T)> = b.iter().map(|(k, v)| (*k, v.clone())).collect();
    sparse_product(&a, &b, sig, Product::Geometric)
}

impl<T: Scalar> Multivector<T> {
    /// General product entry point.
    pub fn product(&self, rhs: &Self, kind: Product, truncation: Truncation) -> Result<Self> {
        self.ensure_compatible(rhs)?;
        let alg = self.algebra();
        let terms = sparse_product(&self.sparse_terms(), &rhs.sparse_terms(), &alg.signature(), kind);
        let (out, overflow) = Multivector::from_sparse(alg, terms, overflow_tol(self, rhs));
        match (overflow, truncation) {
            (Some(grade), Truncation::Strict) => Err(KernelError::TruncationOverflow { grade }),
            _ => Ok(out),
        }
    }

    /// Geometric product, strict truncation.
    pub fn gp(&self, rhs: &Self) -> Result<Self> {
        self.product(rhs, Product::Geometric, Truncation::Strict)
    }

    /// Outer product, strict truncation.
    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        self.product(rhs, Product::Outer, Truncation::Strict)
    }

    /// Left contraction `self ⌟ rhs`.
    pub fn lc(&self, rhs: &Self) -> Result<Self> {
        self.product(rhs, Product::LeftContraction, Truncation::Strict)
    }

    /// Right contraction `self ⌞ rhs`.
    pub fn rc(&self, rhs: &Self) -> Result<Self> {
        self.product(rhs, Product::RightContraction, Truncation::Strict)
    }

    /// Scalar product `<A B>_0`.
    pub fn scalar_product(&self, rhs: &Self) -> Result<T> {
        Ok(self.product(rhs, Product::Scalar, Truncation::Lossy)?.scalar_part())
    }

}

impl<T: Scalar> Mul<&Multivector<T>> for &Multivector<T> {
    type Output = Multivector<T>;

    /// Geometric product. Panics on mismatched algebras or truncation overflow.
    fn mul(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.gp(rhs).unwrap_or_else(|e| panic!("geometric product failed: {e}"))
    }
}

impl<T: Scalar> Mul for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Multivector<T>) -> Multivector<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Mul<T> for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: T) -> Multivector<T> {
        self.scale(rhs)
    }
}

impl<T: Scalar> BitXor<&Multivector<T>> for &Multivector<T> {
    type Output = Multivector<T>;

    /// Outer product. Panics on mismatched algebras or truncation overflow.
    fn bitxor(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.wedge(rhs).unwrap_or_else(|e| panic!("outer product failed: {e}"))
    }
}

impl<T: Scalar> BitXor for Multivector<T> {
    type Output = Multivector<T>;
    fn bitxor(self, rhs: Multivector<T>) -> Multivector<T> {
        &self ^ &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::Algebra;

    fn e(alg: &Algebra, i: usize) -> Multivector<f64> {
        Multivector::basis_vector(alg, i).unwrap()
    }

    #[test]
    fn quaternion_relations() {
        let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
        let (e1, e2, e3) = (e(&alg, 0), e(&alg, 1), e(&alg, 2));
        let i = &e3 * &e2;
        let j = &e1 * &e3;
        let k = &e2 * &e1;
        let minus_one = Multivector::scalar(&alg, -1.0);
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
    }

    #[test]
    fn contraction_grades() {
        let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
        let (e1, e2) = (e(&alg, 0), e(&alg, 1));
        let b = &e1 ^ &e2;
        assert_eq!(e1.lc(&b).unwrap(), e2);
        assert_eq!(b.rc(&e2).unwrap(), e1);
        assert!(b.lc(&e1).unwrap().is_zero_within(0.0));
        assert_eq!(e1.scalar_product(&e1).unwrap(), 1.0);
    }

    #[test]
    fn strict_truncation_overflow() {
        let alg = Algebra::new(Signature::euclidean(4).unwrap(), 1).unwrap();
        let (e1, e2) = (e(&alg, 0), e(&alg, 1));
        assert_eq!(e1.gp(&e2).unwrap_err(), KernelError::TruncationOverflow { grade: 2 });
        let lossy = e1.product(&e2, Product::Geometric, Truncation::Lossy).unwrap();
        assert!(lossy.is_zero_within(0.0));
        assert_eq!(e1.gp(&e1).unwrap().scalar_part(), 1.0);
    }

    #[test]
    fn mismatched_algebras() {
        let a = Algebra::full(Signature::euclidean(2).unwrap()).unwrap();
        let b = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
        assert_eq!(e(&a, 0).gp(&e(&b, 0)).unwrap_err(), KernelError::SignatureMismatch);
    }
}
