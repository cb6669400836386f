use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Coefficient field of a multivector.
///
/// Products only need ring operations, so exact rationals work for everything
/// except exponentials and norms, which require [`Real`].
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + ToPrimitive + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Whether the value counts as zero at absolute tolerance `tol`.
    /// Exact types ignore the tolerance.
    fn is_negligible(&self, tol: f64) -> bool;

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("value not representable in scalar type")
    }
}

impl Scalar for f64 {
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

impl Scalar for f32 {
    fn is_negligible(&self, tol: f64) -> bool {
        (*self as f64).abs() <= tol
    }
}

impl Scalar for Ratio<i64> {
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

/// Floating-point scalars, needed for rotors, square roots and transcendental functions.
pub trait Real: Scalar + Float + FloatConst {}

impl Real for f32 {}
impl Real for f64 {}
