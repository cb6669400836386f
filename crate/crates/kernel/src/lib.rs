//! Clifford algebra Cl(p,q,r) for n <= 16 generators.
//!
//! Multivectors are generic over the coefficient type. Ring operations work for
//! any [`Scalar`] (including exact rationals); rotors and norms need a [`Real`].
//!
//! ```
//! use fga_kernel::{Algebra, Multivector64, Signature};
//!
//! let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
//! let e1 = Multivector64::basis_vector(&alg, 0).unwrap();
//! let e2 = Multivector64::basis_vector(&alg, 1).unwrap();
//! let b = &e1 ^ &e2;
//! assert_eq!(e1.lc(&b).unwrap(), e2);
//! ```

mod blade;
mod error;
mod inverse;
mod layout;
mod multivector;
mod product;
mod rotor;
mod scalar;
mod signature;
mod tolerance;

pub use blade::{basis_product, reordering_sign, BasisBlade};
pub use error::{KernelError, Result};
pub use layout::{grade_dims, Algebra, GradeDims, FULL_STORAGE_LIMIT};
pub use multivector::Multivector;
pub use product::{Product, Truncation};
pub use rotor::{sandwich, Rotor, RotorKind};
pub use scalar::{Real, Scalar};
pub use signature::Signature;
pub use tolerance::Tolerances;

pub use num_rational::Rational64;

pub type Multivector64 = Multivector<f64>;
pub type Multivector32 = Multivector<f32>;
pub type RationalMultivector = Multivector<Rational64>;
pub type Rotor64 = Rotor<f64>;
pub type Rotor32 = Rotor<f32>;
