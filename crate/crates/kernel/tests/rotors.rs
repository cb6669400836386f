mod common;

use common::*;
use fga_kernel::{Algebra, Multivector64, Rotor, Rotor64, RotorKind, Signature};
use proptest::prelude::*;

fn simple_plane(a: &Multivector64, b: &Multivector64) -> Option<Multivector64> {
    let p = a.wedge(b).unwrap();
    let sq = p.norm_squared().abs();
    // keep away from near-null planes, where the normalisation blows up
    if p.max_abs() < 0.1 || sq < 0.05 * p.coefficient_norm().powi(2) {
        None
    } else {
        Some(p)
    }
}

fn setup() -> impl Strategy<Value = (Multivector64, Multivector64, Multivector64, Multivector64, Multivector64)> {
    euclidean_or_mixed().prop_filter("n >= 2", |s| s.dim() >= 2).prop_flat_map(|sig| {
        let alg = Algebra::full(sig).unwrap();
        (vector(&alg), vector(&alg), vector(&alg), vector(&alg), multivector(&alg))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sandwich_preserves_grade_and_norm((a, b, _, _, x) in setup(), theta in -1.5f64..1.5) {
        let plane = simple_plane(&a, &b);
        prop_assume!(plane.is_some());
        let r = Rotor::exp(&plane.unwrap(), theta).unwrap();
        for k in 0..=x.algebra().dim() {
            let xk = x.grade(k);
            let y = r.apply(&xk).unwrap();
            prop_assert!(y.grades(1e-9 * y.max_abs().max(1.0)).iter().all(|&g| g == k));
            let (n0, n1) = (xk.norm_squared(), y.norm_squared());
            prop_assert!((n0 - n1).abs() <= 1e-9 * n0.abs().max(1.0) * (1.0 + y.max_abs().powi(2)),
                "grade {k}: {n0} vs {n1}");
        }
    }

    #[test]
    fn sandwich_is_invertible((a, b, _, _, x) in setup(), theta in -1.5f64..1.5) {
        let plane = simple_plane(&a, &b);
        prop_assume!(plane.is_some());
        let r = Rotor::exp(&plane.unwrap(), theta).unwrap();
        let back = r.reverse().apply(&r.apply(&x).unwrap()).unwrap();
        prop_assert!(back.approx_eq(&x, 1e-10));
    }

    #[test]
    fn composition_is_sequential((a, b, c, d, x) in setup(), s in -1.5f64..1.5, t in -1.5f64..1.5) {
        let (p1, p2) = (simple_plane(&a, &b), simple_plane(&c, &d));
        prop_assume!(p1.is_some() && p2.is_some());
        let r1 = Rotor::exp(&p1.unwrap(), s).unwrap();
        let r2 = Rotor::exp(&p2.unwrap(), t).unwrap();
        let composed = r1.compose(&r2).unwrap().apply(&x).unwrap();
        let sequential = r1.apply(&r2.apply(&x).unwrap()).unwrap();
        prop_assert!(composed.approx_eq(&sequential, 1e-9));
    }

    #[test]
    fn planar_rotation_formula(theta in -3.0f64..3.0) {
        let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
        let e1 = Multivector64::basis_vector(&alg, 0).unwrap();
        let e2 = Multivector64::basis_vector(&alg, 1).unwrap();
        let e3 = Multivector64::basis_vector(&alg, 2).unwrap();
        let r = Rotor::exp(&(&e1 ^ &e2), theta).unwrap();
        let expected = e1.scale(theta.cos()) + e2.scale(theta.sin());
        prop_assert!(r.apply(&e1).unwrap().approx_eq(&expected, 1e-12));
        prop_assert!(r.apply(&e3).unwrap().approx_eq(&e3, 1e-12));
    }

    #[test]
    fn relative_position_encoding(m in -20i32..20, n in -20i32..20, theta in 0.01f64..1.0) {
        let alg = Algebra::full(Signature::euclidean(4).unwrap()).unwrap();
        let e = |i| Multivector64::basis_vector(&alg, i).unwrap();
        let plane = &e(0) ^ &e(1);
        let rot = |k: i32| Rotor::exp(&plane, k as f64 * theta).unwrap();
        let lhs = rot(m).reverse().compose(&rot(n)).unwrap();
        prop_assert!(lhs.value().approx_eq(rot(n - m).value(), 1e-12));
        // scores depend on the offset only
        let q = e(0).scale(0.3) + e(1).scale(-1.2) + e(2);
        let k = e(0).scale(0.7) + e(1).scale(0.4) - e(3);
        let score = |i: i32, j: i32| rot(i).apply(&q).unwrap().scalar_product(&rot(j).apply(&k).unwrap()).unwrap();
        prop_assert!((score(m, n) - score(0, n - m)).abs() < 1e-12);
    }
}

#[test]
fn boost_in_cl11() {
    let alg = Algebra::full(Signature::new(1, 1, 0).unwrap()).unwrap();
    let e = Multivector64::basis_vector(&alg, 0).unwrap();
    let f = Multivector64::basis_vector(&alg, 1).unwrap();
    for phi in [-2.0f64, -0.3, 0.0, 0.5, 1.7] {
        let r = Rotor::exp(&(&e ^ &f), phi).unwrap();
        let expected = e.scale(phi.cosh()) + f.scale(phi.sinh());
        assert!(r.apply(&e).unwrap().approx_eq(&expected, 1e-12));
    }
}

#[test]
fn split_signature_plane_squares() {
    let sig = Signature::new(2, 2, 0).unwrap();
    let alg = Algebra::full(sig).unwrap();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let b = Multivector64::basis_vector(&alg, i).unwrap().wedge(&Multivector64::basis_vector(&alg, j).unwrap()).unwrap();
            let square = b.gp(&b).unwrap();
            let expected = -(sig.square(i) as f64) * sig.square(j) as f64;
            assert_eq!(square, Multivector64::scalar(&alg, expected), "e{}e{}", i + 1, j + 1);
            let kind = Rotor64::exp(&b, 0.4).unwrap().kind();
            let want = if expected < 0.0 { RotorKind::Elliptic } else { RotorKind::Hyperbolic };
            assert_eq!(kind, want);
        }
    }
}
