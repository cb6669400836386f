//! Holographic reduced representations, used as a baseline for role-filler retrieval.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::compose::{build_event, query_filler};
use crate::error::{Error, Result};
use crate::lexicon::LexicalEntry;
use crate::space::{SemanticSpace, Subspace, SubspaceLayout};
use crate::types::SemanticKind;
use fga_kernel::{Multivector64, Signature};

/// A real vector combined by circular convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct HrrVector {
    values: Vec<f64>,
}

impl HrrVector {
    pub fn new(values: Vec<f64>) -> Self {
        HrrVector { values }
    }

    pub fn zeros(d: usize) -> Self {
        HrrVector { values: vec![0.0; d] }
    }

    /// Components drawn i.i.d. from `N(0, 1/d)`.
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let normal = Normal::new(0.0, 1.0 / (d as f64).sqrt()).expect("finite std");
        HrrVector { values: (0..d).map(|_| normal.sample(rng)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn check(&self, other: &HrrVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// The involution `x*[i] = x[-i mod d]`, the approximate inverse under convolution.
    pub fn involution(&self) -> HrrVector {
        let d = self.dim();
        HrrVector { values: (0..d).map(|i| self.values[(d - i) % d]).collect() }
    }

    pub fn add(&self, other: &HrrVector) -> Result<HrrVector> {
        self.check(other)?;
        Ok(HrrVector { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn dot(&self, other: &HrrVector) -> Result<f64> {
        self.check(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Cosine similarity; zero if either vector is zero.
    pub fn cosine(&self, other: &HrrVector) -> Result<f64> {
        let denom = self.norm() * other.norm();
        Ok(if denom == 0.0 { 0.0 } else { self.dot(other)? / denom })
    }
}

/// Circular convolution `c[k] = Σ_i a[i] b[k - i mod d]`.
pub fn hrr_bind(a: &HrrVector, b: &HrrVector) -> Result<HrrVector> {
    a.check(b)?;
    let d = a.dim();
    let mut out = vec![0.0; d];
    for (i, &x) in a.values.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.values.iter().enumerate() {
            out[(i + j) % d] += x * y;
        }
    }
    Ok(HrrVector { values: out })
}

/// Circular correlation: convolution with the involution of `role`.
pub fn hrr_unbind(role: &HrrVector, bound: &HrrVector) -> Result<HrrVector> {
    hrr_bind(&role.involution(), bound)
}

/// One row of the crosstalk report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrosstalkRow {
    pub bindings: usize,
    /// Largest componentwise error over all FGA queries.
    pub fga_max_error: f64,
    /// Mean of `1 - cos(retrieved, filler)` over HRR queries.
    pub hrr_error_mean: f64,
    /// Standard deviation of the per-trial HRR means.
    pub hrr_error_std: f64,
}

/// Largest role count the FGA side can hold alongside a non-trivial entity space.
pub const MAX_BENCH_ROLES: usize = Signature::MAX_DIM - 1;

fn bench_space(roles: usize) -> Result<SemanticSpace> {
    if roles > MAX_BENCH_ROLES {
        return Err(Error::RoleBudgetExceeded { requested: roles, available: MAX_BENCH_ROLES });
    }
    let entity = 8.min(Signature::MAX_DIM - roles);
    let layout = SubspaceLayout::from_dims(&[(Subspace::Entity, entity, 1), (Subspace::Role, roles, 1)])?;
    let mut space = SemanticSpace::build(layout, Some(2))?;
    let labels: Vec<String> = (1..=roles).map(|i| format!("r{i}")).collect();
    space.register_roles(&labels)?;
    Ok(space)
}

fn random_filler<R: Rng + ?Sized>(space: &SemanticSpace, rng: &mut R) -> Result<Multivector64> {
    let dim = space.layout().subspace_dim(Subspace::Entity);
    let normal = Normal::new(0.0, 1.0).expect("finite std");
    let mut v = Multivector64::zero(space.algebra());
    for i in 0..dim {
        v += &space.basis(Subspace::Entity, i)?.scale(normal.sample(rng));
    }
    Ok(v.scale(1.0 / v.norm_squared().sqrt()))
}

fn trial_rng(seed: u64, m: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((m as u64) << 32) | trial as u64);
    rng
}

/// For `m = 1..=max_bindings`, stores `m` role-filler pairs in both systems, queries
/// every role and reports the retrieval errors. `m = 0` is reported with zero errors.
pub fn crosstalk_experiment(max_bindings: usize, d: usize, trials: usize, seed: u64) -> Result<Vec<CrosstalkRow>> {
    let space = bench_space(max_bindings)?;
    let mut rows = Vec::with_capacity(max_bindings + 1);
    rows.push(CrosstalkRow { bindings: 0, fga_max_error: 0.0, hrr_error_mean: 0.0, hrr_error_std: 0.0 });
    for m in 1..=max_bindings {
        let mut fga_max: f64 = 0.0;
        let mut means = Vec::with_capacity(trials);
        for t in 0..trials {
            let mut rng = trial_rng(seed, m, t);
            let fillers: Vec<LexicalEntry> = (0..m)
                .map(|i| Ok(LexicalEntry::new(format!("f{i}"), SemanticKind::Entity, random_filler(&space, &mut rng)?)))
                .collect::<Result<_>>()?;
            let pairs: Vec<(&str, &LexicalEntry)> =
                space.roles()[..m].iter().map(String::as_str).zip(fillers.iter()).collect();
            let event = build_event(&space, &pairs)?;
            for (role, filler) in &pairs {
                let got = query_filler(&event, &space.role_key(role)?)?;
                fga_max = fga_max.max((&got - &filler.value).max_abs());
            }

            let roles: Vec<HrrVector> = (0..m).map(|_| HrrVector::random(d, &mut rng)).collect();
            let items: Vec<HrrVector> = (0..m).map(|_| HrrVector::random(d, &mut rng)).collect();
            let mut memory = HrrVector::zeros(d);
            for (r, f) in roles.iter().zip(&items) {
                memory = memory.add(&hrr_bind(r, f)?)?;
            }
            let mut err = 0.0;
            for (r, f) in roles.iter().zip(&items) {
                err += 1.0 - hrr_unbind(r, &memory)?.cosine(f)?;
            }
            means.push(err / m as f64);
        }
        let n = means.len().max(1) as f64;
        let mean = means.iter().sum::<f64>() / n;
        let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        rows.push(CrosstalkRow { bindings: m, fga_max_error: fga_max, hrr_error_mean: mean, hrr_error_std: var.sqrt() });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn convolution_by_hand() {
        let a = HrrVector::new(vec![1.0, 2.0, 3.0]);
        let b = HrrVector::new(vec![0.0, 1.0, 0.0]);
        // convolving with the shift-by-one impulse rotates
        assert_eq!(hrr_bind(&a, &b).unwrap().values(), &[3.0, 1.0, 2.0]);
        assert_eq!(a.involution().values(), &[1.0, 3.0, 2.0]);
    }

    #[test]
    fn bind_commutes_and_zero_annihilates() {
        let mut rng = rng();
        let a = HrrVector::random(64, &mut rng);
        let b = HrrVector::random(64, &mut rng);
        let ab = hrr_bind(&a, &b).unwrap();
        let ba = hrr_bind(&b, &a).unwrap();
        assert!(ab.values().iter().zip(ba.values()).all(|(x, y)| (x - y).abs() < 1e-12));
        assert!(hrr_bind(&a, &HrrVector::zeros(64)).unwrap().values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn dim_mismatch() {
        let mut rng = rng();
        let a = HrrVector::random(4, &mut rng);
        let b = HrrVector::random(5, &mut rng);
        assert_eq!(hrr_bind(&a, &b).unwrap_err(), Error::DimMismatch(4, 5));
    }

    #[test]
    fn role_budget() {
        assert!(matches!(crosstalk_experiment(16, 8, 1, 0), Err(Error::RoleBudgetExceeded { requested: 16, .. })));
        assert_eq!(crosstalk_experiment(0, 8, 1, 0).unwrap().len(), 1);
    }
}
