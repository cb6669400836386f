use fga_kernel::{Algebra, Multivector32, RationalMultivector, Rational64, Rotor32, Signature};

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[test]
fn quaternions_are_exact_over_rationals() {
    let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
    let e: Vec<_> = (0..3).map(|i| RationalMultivector::basis_vector(&alg, i).unwrap()).collect();
    let (i, j, k) = (&e[2] * &e[1], &e[0] * &e[2], &e[1] * &e[0]);
    let minus_one = RationalMultivector::scalar(&alg, r(-1, 1));
    assert_eq!(&i * &i, minus_one);
    assert_eq!(&j * &j, minus_one);
    assert_eq!(&k * &k, minus_one);
    assert_eq!(&i * &j, k);
}

#[test]
fn rational_unbinding_is_exact() {
    let alg = Algebra::full(Signature::euclidean(4).unwrap()).unwrap();
    let e: Vec<_> = (0..4).map(|i| RationalMultivector::basis_vector(&alg, i).unwrap()).collect();
    let filler = e[0].scale(r(2, 3)) + e[1].scale(r(-5, 7));
    let event = e[2].wedge(&filler).unwrap() + e[3].wedge(&e[0].scale(r(1, 9))).unwrap();
    let back = e[2].inverse().unwrap().lc(&event).unwrap();
    assert_eq!(back, filler);
}

#[test]
fn single_precision_rotor() {
    let alg = Algebra::full(Signature::euclidean(3).unwrap()).unwrap();
    let e1 = Multivector32::basis_vector(&alg, 0).unwrap();
    let e2 = Multivector32::basis_vector(&alg, 1).unwrap();
    let rot = Rotor32::exp(&(&e1 ^ &e2), std::f32::consts::FRAC_PI_2).unwrap();
    assert!(rot.apply(&e1).unwrap().approx_eq(&e2, 1e-6));
}
