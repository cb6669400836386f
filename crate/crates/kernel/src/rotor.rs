use crate::error::{KernelError, Result};
use crate::layout::Algebra;
use crate::multivector::Multivector;
use crate::product::{sparse_mul, sparse_of};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Geometry of a rotor's generating plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotorKind {
    /// `B^2 = -1`: ordinary rotation.
    Elliptic,
    /// `B^2 = +1`: boost.
    Hyperbolic,
    /// `B^2 = 0`: translation-like.
    Parabolic,
    /// Product of several rotors, or built from a raw value.
    Composite,
}

/// An even, unit versor applied by sandwiching.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotor<T: Real> {
    value: Multivector<T>,
    kind: RotorKind,
}

impl<T: Real> Rotor<T> {
    /// `exp(-theta/2 B^)` for a simple bivector `B`.
    ///
    /// The plane is normalised so that `B^2 = ±1`; a null plane is used as given.
    /// With `B = e1 e2` and `theta = pi/2` the rotor maps `e1` to `e2`.
    pub fn exp(plane: &Multivector<T>, angle: T) -> Result<Self> {
        Self::exp_with(plane, angle, &Tolerances::default())
    }

    pub fn exp_with(plane: &Multivector<T>, angle: T, tol: &Tolerances) -> Result<Self> {
        let alg = plane.algebra();
        let scale = plane.max_abs();
        if scale == 0.0 || plane.homogeneous_grade(tol.eq * scale) != Some(2) {
            return Err(KernelError::NotABivector);
        }
        let sq = sparse_mul(&sparse_of(plane), &sparse_of(plane), &alg.signature());
        let s = sq.get(&0).copied().unwrap_or_else(T::zero);
        let sq_scale = scale * scale;
        if sq.iter().any(|(k, v)| *k != 0 && v.approx().abs() > tol.simple * sq_scale) {
            return Err(KernelError::NonSimpleBivector);
        }
        let half = angle / (T::one() + T::one());
        let one = Multivector::one(alg);
        let (value, kind) = if s.approx().abs() <= tol.simple * sq_scale {
            (one - plane.scale(half), RotorKind::Parabolic)
        } else {
            let unit = plane.scale(T::one() / num_traits::Float::abs(s).sqrt());
            if s < T::zero() {
                (one.scale(half.cos()) - unit.scale(half.sin()), RotorKind::Elliptic)
            } else {
                (one.scale(half.cosh()) - unit.scale(half.sinh()), RotorKind::Hyperbolic)
            }
        };
        Ok(Rotor { value, kind })
    }

    pub fn identity(alg: &Algebra) -> Self {
        Rotor { value: Multivector::one(alg), kind: RotorKind::Composite }
    }

    /// Wrap an existing even element, checking `R R~ = 1`.
    pub fn from_multivector(value: Multivector<T>) -> Result<Self> {
        check_unit(&value, Tolerances::default().rotor)?;
        Ok(Rotor { value, kind: RotorKind::Composite })
    }

    pub fn value(&self) -> &Multivector<T> {
        &self.value
    }

    pub fn kind(&self) -> RotorKind {
        self.kind
    }

    pub fn reverse(&self) -> Self {
        Rotor { value: self.value.reverse(), kind: self.kind }
    }

    /// `self * other`: applying the result equals applying `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let alg = self.value.algebra();
        let terms = sparse_mul(&sparse_of(&self.value), &sparse_of(&other.value), &alg.signature());
        let (value, overflow) = Multivector::from_sparse(alg, terms, Tolerances::default().num);
        if let Some(grade) = overflow {
            return Err(KernelError::TruncationOverflow { grade });
        }
        Ok(Rotor { value, kind: RotorKind::Composite })
    }

    /// `R X R~`. Intermediate products are not truncated; the result is.
    pub fn apply(&self, x: &Multivector<T>) -> Result<Multivector<T>> {
        sandwich_unchecked(&self.value, x)
    }
}

fn check_unit<T: Real>(r: &Multivector<T>, tol: f64) -> Result<()> {
    let alg = r.algebra();
    let rr = sparse_mul(&sparse_of(r), &sparse_of(&r.reverse()), &alg.signature());
    let mut dev = 0f64;
    for (k, v) in rr.iter() {
        let d = if *k == 0 { v.approx() - 1.0 } else { v.approx() };
        dev = dev.max(d.abs());
    }
    if !rr.contains_key(&0) {
        dev = dev.max(1.0);
    }
    if dev > tol {
        return Err(KernelError::InvalidRotor { deviation: dev });
    }
    Ok(())
}

fn sandwich_unchecked<T: Real>(r: &Multivector<T>, x: &Multivector<T>) -> Result<Multivector<T>> {
    r.ensure_compatible(x)?;
    let alg = r.algebra();
    let sig = alg.signature();
    let rx = sparse_mul(&sparse_of(r), &sparse_of(x), &sig);
    let rxr = sparse_mul(&rx, &sparse_of(&r.reverse()), &sig);
    let tol = Tolerances::default().num * 1f64.max(r.max_abs() * r.max_abs() * x.max_abs());
    let (out, overflow) = Multivector::from_sparse(alg, rxr, tol);
    if let Some(grade) = overflow {
        return Err(KernelError::TruncationOverflow { grade });
    }
    Ok(out)
}

/// `R X R~` for a raw rotor value, rejecting `R` unless `R R~ = 1` within the rotor tolerance.
pub fn sandwich<T: Real>(r: &Multivector<T>, x: &Multivector<T>) -> Result<Multivector<T>> {
    check_unit(r, Tolerances::default().rotor)?;
    sandwich_unchecked(r, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Signature;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn quarter_turn() {
        let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
        let e1 = Multivector::basis_vector(&alg, 0).unwrap();
        let e2 = Multivector::basis_vector(&alg, 1).unwrap();
        let r = Rotor::exp(&(&e1 ^ &e2), FRAC_PI_2).unwrap();
        assert_eq!(r.kind(), RotorKind::Elliptic);
        assert!(r.apply(&e1).unwrap().approx_eq(&e2, 1e-12));
    }

    #[test]
    fn boost() {
        let alg = Algebra::full(Signature::new(1, 1, 0).unwrap()).unwrap();
        let e = Multivector::basis_vector(&alg, 0).unwrap();
        let f = Multivector::basis_vector(&alg, 1).unwrap();
        let phi = 0.7f64;
        let r = Rotor::exp(&(&e ^ &f), phi).unwrap();
        assert_eq!(r.kind(), RotorKind::Hyperbolic);
        let expected = e.scale(phi.cosh()) + f.scale(phi.sinh());
        assert!(r.apply(&e).unwrap().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn parabolic() {
        let alg = Algebra::full(Signature::new(1, 0, 1).unwrap()).unwrap();
        let e = Multivector::basis_vector(&alg, 0).unwrap();
        let n = Multivector::basis_vector(&alg, 1).unwrap();
        let r = Rotor::exp(&(&e ^ &n), 1.0f64).unwrap();
        assert_eq!(r.kind(), RotorKind::Parabolic);
        assert!(r.value().norm_squared() - 1.0 < 1e-12);
    }

    #[test]
    fn rejects_non_simple() {
        let alg = Algebra::full(Signature::euclidean(4).unwrap()).unwrap();
        let e: Vec<_> = (0..4).map(|i| Multivector::<f64>::basis_vector(&alg, i).unwrap()).collect();
        let b = (&e[0] ^ &e[1]) + (&e[2] ^ &e[3]);
        assert_eq!(Rotor::exp(&b, 1.0).unwrap_err(), KernelError::NonSimpleBivector);
        assert_eq!(Rotor::exp(&e[0], 1.0).unwrap_err(), KernelError::NotABivector);
    }

    #[test]
    fn sandwich_checks_unit() {
        let alg = Algebra::full(Signature::euclidean(2).unwrap()).unwrap();
        let two = Multivector::scalar(&alg, 2.0);
        assert!(matches!(sandwich(&two, &two), Err(KernelError::InvalidRotor { .. })));
    }
}
