use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::blade::BasisBlade;
use crate::error::{KernelError, Result};
use crate::layout::Algebra;
use crate::scalar::{Real, Scalar};

/// A general multivector with dense per-grade coefficient blocks.
#[derive(Clone)]
pub struct Multivector<T> {
    alg: Algebra,
    coeffs: Vec<T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(alg: &Algebra) -> Self {
        Multivector { alg: alg.clone(), coeffs: vec![T::zero(); alg.len()] }
    }

    pub fn scalar(alg: &Algebra, value: T) -> Self {
        let mut m = Self::zero(alg);
        m.coeffs[0] = value;
        m
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::scalar(alg, T::one())
    }

    pub fn basis_vector(alg: &Algebra, i: usize) -> Result<Self> {
        if i >= alg.dim() {
            return Err(KernelError::GeneratorOutOfRange { index: i, dim: alg.dim() });
        }
        Self::blade(alg, BasisBlade::generator(i), T::one())
    }

    /// Grade-1 element from its `n` components.
    pub fn vector(alg: &Algebra, components: &[T]) -> Result<Self> {
        if components.len() != alg.dim() {
            return Err(KernelError::LengthMismatch { expected: alg.dim(), got: components.len() });
        }
        let mut m = Self::zero(alg);
        let start = alg.grade_range(1).start;
        for (i, c) in components.iter().enumerate() {
            m.coeffs[start + i] = c.clone();
        }
        Ok(m)
    }

    pub fn blade(alg: &Algebra, blade: BasisBlade, coeff: T) -> Result<Self> {
        let mut m = Self::zero(alg);
        m.set(blade, coeff)?;
        Ok(m)
    }

    /// Sum of terms; repeated blades accumulate.
    pub fn from_terms<I: IntoIterator<Item = (BasisBlade, T)>>(alg: &Algebra, terms: I) -> Result<Self> {
        let mut m = Self::zero(alg);
        for (b, c) in terms {
            let idx = m.checked_index(b)?;
            m.coeffs[idx] = m.coeffs[idx].clone() + c;
        }
        Ok(m)
    }

    /// Dense constructor; `coeffs` must follow the algebra's layout.
    pub fn from_coefficients(alg: &Algebra, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != alg.len() {
            return Err(KernelError::LengthMismatch { expected: alg.len(), got: coeffs.len() });
        }
        Ok(Multivector { alg: alg.clone(), coeffs })
    }

    fn checked_index(&self, blade: BasisBlade) -> Result<usize> {
        if blade.0 >> self.alg.dim() != 0 {
            return Err(KernelError::GeneratorOutOfRange { index: 31 - blade.0.leading_zeros() as usize, dim: self.alg.dim() });
        }
        self.alg
            .index_of(blade)
            .ok_or(KernelError::GradeOutOfRange { grade: blade.grade(), max: self.alg.max_grade() })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn get(&self, blade: BasisBlade) -> T {
        self.alg.index_of(blade).map(|i| self.coeffs[i].clone()).unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, blade: BasisBlade, value: T) -> Result<()> {
        let idx = self.checked_index(blade)?;
        self.coeffs[idx] = value;
        Ok(())
    }

    pub fn grade_block(&self, k: usize) -> &[T] {
        &self.coeffs[self.alg.grade_range(k)]
    }

    /// Nonzero terms in layout order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisBlade, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.alg.blade_at(i), c))
    }

    pub fn scalar_part(&self) -> T {
        self.coeffs[0].clone()
    }

    /// Grade projection `<M>_k`.
    pub fn grade(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.alg);
        let r = self.alg.grade_range(k);
        out.coeffs[r.clone()].clone_from_slice(&self.coeffs[r]);
        out
    }

    /// Keep only the terms whose blade satisfies `keep`.
    pub fn filter_blades(&self, mut keep: impl FnMut(BasisBlade) -> bool) -> Self {
        let mut out = Self::zero(&self.alg);
        for (i, c) in self.coeffs.iter().enumerate() {
            if keep(self.alg.blade_at(i)) {
                out.coeffs[i] = c.clone();
            }
        }
        out
    }

    pub fn map(&self, mut f: impl FnMut(BasisBlade, &T) -> T) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| f(self.alg.blade_at(i), c)).collect();
        Multivector { alg: self.alg.clone(), coeffs }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|_, c| c.clone() * s.clone())
    }

    /// Reversion: grade k picks up (-1)^{k(k-1)/2}.
    pub fn reverse(&self) -> Self {
        self.map(|b, c| {
            let k = b.grade();
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            }
        })
    }

    /// Grade involution: grade k picks up (-1)^k.
    pub fn involute(&self) -> Self {
        self.map(|b, c| if b.grade() % 2 == 1 { -c.clone() } else { c.clone() })
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.approx().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    /// Grades carrying a coefficient above `tol`.
    pub fn grades(&self, tol: f64) -> Vec<usize> {
        (0..=self.alg.max_grade())
            .filter(|&k| self.grade_block(k).iter().any(|c| !c.is_negligible(tol)))
            .collect()
    }

    /// The single grade present, if the element is homogeneous and nonzero.
    pub fn homogeneous_grade(&self, tol: f64) -> Option<usize> {
        match self.grades(tol).as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    /// `<M M~>_0`, computed directly from the coefficients.
    pub fn norm_squared(&self) -> T {
        let sig = self.alg.signature();
        let mut acc = T::zero();
        for (b, c) in self.terms() {
            match b.square_norm_sign(&sig) {
                1 => acc = acc + c.clone() * c.clone(),
                -1 => acc = acc - c.clone() * c.clone(),
                _ => {}
            }
        }
        acc
    }

    /// Coefficient-wise comparison with relative tolerance
    /// `tol * max(1, |a|_inf, |b|_inf)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if !self.alg.compatible(&other.alg) {
            return false;
        }
        let scale = 1f64.max(self.max_abs()).max(other.max_abs());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol * scale))
    }

    pub(crate) fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.alg.compatible(&other.alg) {
            Ok(())
        } else {
            Err(KernelError::SignatureMismatch)
        }
    }

    /// Write sparse terms into the dense layout. Terms above the truncation are
    /// returned as the largest dropped grade, if any is non-negligible at `tol`.
    pub(crate) fn from_sparse(alg: &Algebra, terms: BTreeMap<u32, T>, tol: f64) -> (Self, Option<usize>) {
        let mut out = Self::zero(alg);
        let mut overflow = None;
        for (mask, c) in terms {
            match alg.index_of(BasisBlade(mask)) {
                Some(i) => out.coeffs[i] = c,
                None => {
                    if !c.is_negligible(tol) {
                        let g = mask.count_ones() as usize;
                        overflow = Some(overflow.map_or(g, |o: usize| o.max(g)));
                    }
                }
            }
        }
        (out, overflow)
    }

    pub(crate) fn sparse_terms(&self) -> Vec<(u32, T)> {
        self.terms().map(|(b, c)| (b.0, c.clone())).collect()
    }

    pub fn cast<U: Scalar>(&self) -> Multivector<U> {
        Multivector {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|c| U::from_f64_lossy(c.approx())).collect(),
        }
    }
}

impl<T: Real> Multivector<T> {
    /// Signed magnitude `sign(s) sqrt(|s|)` of `s = <M M~>_0`.
    pub fn norm(&self) -> T {
        let s = self.norm_squared();
        let m = s.abs().sqrt();
        if s < T::zero() {
            -m
        } else {
            m
        }
    }

    /// Euclidean norm of the coefficient vector, ignoring the metric.
    pub fn coefficient_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + *c * *c).sqrt()
    }

    /// Cosine between coefficient vectors (Euclidean on the blade basis).
    pub fn coefficient_cosine(&self, other: &Self) -> T {
        let dot = self.coeffs.iter().zip(&other.coeffs).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
        let d = self.coefficient_norm() * other.coefficient_norm();
        if d == T::zero() {
            T::zero()
        } else {
            dot / d
        }
    }
}

impl<T: Scalar> PartialEq for Multivector<T> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.compatible(&other.alg) && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({:?}: {})", self.alg, self)
    }
}

impl<T: Scalar> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if b == BasisBlade::SCALAR {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{b}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! linear_op {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt) => {
        impl<T: Scalar> $tr<&Multivector<T>> for &Multivector<T> {
            type Output = Multivector<T>;
            fn $m(self, rhs: &Multivector<T>) -> Multivector<T> {
                self.ensure_compatible(rhs).expect("operands belong to different algebras");
                let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() $op b.clone()).collect();
                Multivector { alg: self.alg.clone(), coeffs }
            }
        }

        impl<T: Scalar> $tr for Multivector<T> {
            type Output = Multivector<T>;
            fn $m(self, rhs: Multivector<T>) -> Multivector<T> {
                &self $op &rhs
            }
        }

        impl<T: Scalar> $tr<&Multivector<T>> for Multivector<T> {
            type Output = Multivector<T>;
            fn $m(self, rhs: &Multivector<T>) -> Multivector<T> {
                &self $op rhs
            }
        }

        impl<T: Scalar> $atr<&Multivector<T>> for Multivector<T> {
            fn $am(&mut self, rhs: &Multivector<T>) {
                self.ensure_compatible(rhs).expect("operands belong to different algebras");
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a = a.clone() $op b.clone();
                }
            }
        }
    };
}

linear_op!(Add, add, AddAssign, add_assign, +);
linear_op!(Sub, sub, SubAssign, sub_assign, -);

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.map(|_, c| -c.clone())
    }
}

impl<T: Scalar> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        -&self
    }
}
