use crate::error::{KernelError, Result};

/// Metric signature of Cl(p,q,r).
///
/// Generators are ordered positive first, then negative, then null.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
    r: usize,
}

impl Signature {
    pub const MAX_DIM: usize = 16;

    pub fn new(p: usize, q: usize, r: usize) -> Result<Self> {
        let n = p + q + r;
        if n == 0 || n > Self::MAX_DIM {
            return Err(KernelError::InvalidDimension(n));
        }
        Ok(Signature { p, q, r })
    }

    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(n, 0, 0)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.p + self.q + self.r
    }

    /// Square of generator `i`: +1, -1 or 0.
    pub fn square(&self, i: usize) -> i8 {
        if i < self.p {
            1
        } else if i < self.p + self.q {
            -1
        } else {
            0
        }
    }
}
