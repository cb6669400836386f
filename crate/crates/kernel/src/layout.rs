use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::blade::BasisBlade;
use crate::error::{KernelError, Result};
use crate::signature::Signature;

const ABSENT: u32 = u32::MAX;

/// Largest dimension stored without grade truncation.
pub const FULL_STORAGE_LIMIT: usize = 12;

struct Layout {
    sig: Signature,
    max_grade: usize,
    offsets: Vec<usize>,
    masks: Vec<u32>,
    index: Vec<u32>,
}

/// A Clifford algebra together with its coefficient layout.
///
/// Coefficients are stored grade by grade; grade `k` occupies a contiguous block
/// and blades within a block are sorted by bitmask. Cloning is cheap.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<Layout>,
}

impl Algebra {
    /// Algebra storing grades `0..=max_grade`.
    pub fn new(sig: Signature, max_grade: usize) -> Result<Self> {
        let n = sig.dim();
        if max_grade > n {
            return Err(KernelError::GradeOutOfRange { grade: max_grade, max: n });
        }
        if n > FULL_STORAGE_LIMIT && max_grade >= n {
            return Err(KernelError::TruncationRequired { n });
        }
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_grade + 1];
        for mask in 0u32..(1u32 << n) {
            let g = mask.count_ones() as usize;
            if g <= max_grade {
                buckets[g].push(mask);
            }
        }
        let mut offsets = Vec::with_capacity(max_grade + 2);
        let mut masks = Vec::new();
        let mut index = vec![ABSENT; 1usize << n];
        for bucket in buckets {
            offsets.push(masks.len());
            for m in bucket {
                index[m as usize] = masks.len() as u32;
                masks.push(m);
            }
        }
        offsets.push(masks.len());
        Ok(Algebra { inner: Arc::new(Layout { sig, max_grade, offsets, masks, index }) })
    }

    /// Untruncated algebra (only for n <= 12).
    pub fn full(sig: Signature) -> Result<Self> {
        Self::new(sig, sig.dim())
    }

    pub fn signature(&self) -> Signature {
        self.inner.sig
    }

    pub fn dim(&self) -> usize {
        self.inner.sig.dim()
    }

    pub fn max_grade(&self) -> usize {
        self.inner.max_grade
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.inner.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn grade_range(&self, k: usize) -> Range<usize> {
        if k > self.inner.max_grade {
            let end = self.len();
            return end..end;
        }
        self.inner.offsets[k]..self.inner.offsets[k + 1]
    }

    pub fn index_of(&self, blade: BasisBlade) -> Option<usize> {
        match self.inner.index.get(blade.0 as usize) {
            Some(&i) if i != ABSENT => Some(i as usize),
            _ => None,
        }
    }

    pub fn blade_at(&self, idx: usize) -> BasisBlade {
        BasisBlade(self.inner.masks[idx])
    }

    pub fn blades(&self) -> impl Iterator<Item = BasisBlade> + '_ {
        self.inner.masks.iter().map(|&m| BasisBlade(m))
    }

    pub fn compatible(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.sig == other.inner.sig && self.inner.max_grade == other.inner.max_grade)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.inner.sig;
        write!(f, "Cl({},{},{})[K={}]", s.p(), s.q(), s.r(), self.inner.max_grade)
    }
}

/// Per-grade dimension counts of a truncated algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeDims {
    pub per_grade: Vec<u64>,
    pub total: u64,
}

/// Binomial coefficients C(n,k) for k = 0..=K and their sum. Pure counting, any n.
pub fn grade_dims(n: u64, max_grade: u64) -> GradeDims {
    let top = max_grade.min(n);
    let mut per_grade = Vec::with_capacity(top as usize + 1);
    let mut c: u128 = 1;
    for k in 0..=top {
        if k > 0 {
            c = c * (n - k + 1) as u128 / k as u128;
        }
        per_grade.push(u64::try_from(c).expect("binomial overflows u64"));
    }
    let total = per_grade.iter().sum();
    GradeDims { per_grade, total }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_blocks() {
        let alg = Algebra::full(Signature::euclidean(4).unwrap()).unwrap();
        assert_eq!(alg.len(), 16);
        assert_eq!(alg.grade_range(2), 5..11);
        for (i, b) in alg.blades().enumerate() {
            assert_eq!(alg.index_of(b), Some(i));
        }
    }

    #[test]
    fn truncation_is_mandatory_above_twelve() {
        let sig = Signature::euclidean(13).unwrap();
        assert_eq!(Algebra::full(sig).unwrap_err(), KernelError::TruncationRequired { n: 13 });
        let alg = Algebra::new(sig, 2).unwrap();
        assert_eq!(alg.len(), 1 + 13 + 78);
        assert_eq!(alg.index_of(BasisBlade(0b111)), None);
    }

    #[test]
    fn dims() {
        assert_eq!(grade_dims(4, 4).per_grade, vec![1, 4, 6, 4, 1]);
        assert_eq!(grade_dims(4, 4).total, 16);
        assert_eq!(grade_dims(64, 2).total, 2081);
        assert_eq!(grade_dims(300, 2).total, 45151);
        assert_eq!(grade_dims(300, 3).total, 4_500_251);
    }
}
