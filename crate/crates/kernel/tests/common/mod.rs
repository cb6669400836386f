#![allow(dead_code)]

use fga_kernel::{Algebra, Multivector64, Signature};
use proptest::prelude::*;

/// Geometric product of two blades by literally concatenating the generator
/// lists and bubble-sorting, contracting equal neighbours with their square.
pub fn oracle_blade_product(a: &[usize], b: &[usize], squares: &[i8]) -> (i8, Vec<usize>) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1i8;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                sign *= squares[word[i]];
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, word)
}

pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn squares(sig: &Signature) -> Vec<i8> {
    (0..sig.dim()).map(|i| sig.square(i)).collect()
}

/// Signatures with n <= 6.
pub fn signature() -> impl Strategy<Value = Signature> {
    (0usize..=6, 0usize..=6, 0usize..=2)
        .prop_filter("1 <= n <= 6", |(p, q, r)| (1..=6).contains(&(p + q + r)))
        .prop_map(|(p, q, r)| Signature::new(p, q, r).unwrap())
}

pub fn euclidean_or_mixed() -> impl Strategy<Value = Signature> {
    (1usize..=4, 0usize..=2).prop_map(|(p, q)| Signature::new(p, q, 0).unwrap())
}

pub fn multivector(alg: &Algebra) -> impl Strategy<Value = Multivector64> {
    let alg = alg.clone();
    proptest::collection::vec(-1.0f64..1.0, alg.len())
        .prop_map(move |c| Multivector64::from_coefficients(&alg, c).unwrap())
}

pub fn vector(alg: &Algebra) -> impl Strategy<Value = Multivector64> {
    let alg = alg.clone();
    proptest::collection::vec(-1.0f64..1.0, alg.dim()).prop_map(move |c| Multivector64::vector(&alg, &c).unwrap())
}

pub fn homogeneous(alg: &Algebra, k: usize) -> impl Strategy<Value = Multivector64> {
    multivector(alg).prop_map(move |m| m.grade(k))
}

/// An algebra with n <= 6 and three random elements of it.
pub fn triple() -> impl Strategy<Value = (Algebra, Multivector64, Multivector64, Multivector64)> {
    signature().prop_flat_map(|sig| {
        let alg = Algebra::full(sig).unwrap();
        (Just(alg.clone()), multivector(&alg), multivector(&alg), multivector(&alg))
    })
}

pub fn vector_pair() -> impl Strategy<Value = (Multivector64, Multivector64)> {
    signature().prop_flat_map(|sig| {
        let alg = Algebra::full(sig).unwrap();
        (vector(&alg), vector(&alg))
    })
}
