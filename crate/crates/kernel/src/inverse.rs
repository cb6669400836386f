use crate::error::{KernelError, Result};
use crate::multivector::Multivector;
use crate::product::sparse_mul;
use crate::product::sparse_of;
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

impl<T: Scalar> Multivector<T> {
    /// `M~ / <M M~>_0`, valid when `M M~` is a nonzero scalar.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with(&Tolerances::default())
    }

    pub fn inverse_with(&self, tol: &Tolerances) -> Result<Self> {
        let alg = self.algebra();
        let sig = alg.signature();
        let rev = self.reverse();
        let mm = sparse_mul(&sparse_of(self), &sparse_of(&rev), &sig);
        let scale = 1f64.max(self.max_abs() * self.max_abs());
        let s = mm.get(&0).cloned().unwrap_or_else(T::zero);
        if mm.iter().any(|(k, v)| *k != 0 && !v.is_negligible(tol.num * scale)) {
            return Err(KernelError::NotInvertible("M M~ is not a scalar"));
        }
        if s.is_negligible(tol.num * scale) {
            return Err(KernelError::NotInvertible("M M~ vanishes"));
        }
        let inv = rev.map(|_, c| c.clone() / s.clone());
        // M~ M can still fail to be scalar for non-versors
        let check = sparse_mul(&sparse_of(&inv), &sparse_of(self), &sig);
        let ok = check.iter().all(|(k, v)| {
            let target = if *k == 0 { v.clone() - T::one() } else { v.clone() };
            target.is_negligible(tol.num * 1f64.max(self.max_abs() * inv.max_abs()))
        });
        if !ok {
            return Err(KernelError::NotInvertible("M~ M is not a scalar"));
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use crate::{Algebra, KernelError, Multivector, Signature};
    use num_rational::Ratio;

    #[test]
    fn vector_inverse() {
        let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
        let v = Multivector::vector(&alg, &[1.0, 2.0, 2.0]).unwrap();
        let inv = v.inverse().unwrap();
        assert!((&v * &inv).approx_eq(&Multivector::one(&alg), 1e-12));
    }

    #[test]
    fn exact_rational_inverse() {
        let alg = Algebra::full(Signature::euclidean(2).unwrap()).unwrap();
        let r = |n, d| Ratio::new(n, d);
        let v = Multivector::vector(&alg, &[r(1, 2), r(3, 1)]).unwrap();
        let inv = v.inverse().unwrap();
        assert_eq!(&v * &inv, Multivector::one(&alg));
    }

    #[test]
    fn non_invertible() {
        let alg = Algebra::full(Signature::euclidean(2).unwrap()).unwrap();
        let m = Multivector::<f64>::one(&alg) + Multivector::basis_vector(&alg, 0).unwrap();
        assert!(matches!(m.inverse(), Err(KernelError::NotInvertible(_))));
        let null = Algebra::full(Signature::new(1, 0, 1).unwrap()).unwrap();
        let n = Multivector::<f64>::basis_vector(&null, 1).unwrap();
        assert!(matches!(n.inverse(), Err(KernelError::NotInvertible(_))));
    }
}
