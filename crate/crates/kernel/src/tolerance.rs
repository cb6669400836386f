/// Numerical tolerances used by comparisons and validity checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance for equality and vanishing tests.
    pub eq: f64,
    /// Relative tolerance on truncation overflow and versor checks.
    pub num: f64,
    /// Allowed deviation of R R~ from 1.
    pub rotor: f64,
    /// Allowed non-scalar residue in the square of a simple bivector.
    pub simple: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eq: 1e-9, num: 1e-9, rotor: 1e-8, simple: 1e-8 }
    }
}
