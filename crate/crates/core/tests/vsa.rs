use fga_core::{crosstalk_experiment, hrr_bind, hrr_unbind, HrrVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn single_binding_cosine_is_about_one_over_root_two() {
    // |R_k|^2 is Exp(1) per frequency, so E[cos] -> E[XY] / sqrt(E[X^2 Y] E[Y]) = 1/sqrt(2)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let d = 512;
    let trials = 200;
    let mut total = 0.0;
    for _ in 0..trials {
        let r = HrrVector::random(d, &mut rng);
        let f = HrrVector::random(d, &mut rng);
        let c = hrr_unbind(&r, &hrr_bind(&r, &f).unwrap()).unwrap().cosine(&f).unwrap();
        assert!(c < 1.0);
        total += c;
    }
    let mean = total / trials as f64;
    assert!((mean - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.03, "mean cosine {mean}");
}

#[test]
fn crosstalk_grows_with_bindings_and_fga_stays_exact() {
    let rows = crosstalk_experiment(5, 256, 100, 3).unwrap();
    assert_eq!(rows[0].hrr_error_mean, 0.0);
    assert_eq!(rows[0].fga_max_error, 0.0);
    assert!(rows[1].hrr_error_mean > 0.0);
    for w in rows[1..].windows(2) {
        assert!(w[1].hrr_error_mean > w[0].hrr_error_mean, "{rows:?}");
    }
    assert!(rows.iter().all(|r| r.fga_max_error < 1e-10));
}

#[test]
fn reproducible_with_a_seed() {
    assert_eq!(crosstalk_experiment(3, 64, 5, 9).unwrap(), crosstalk_experiment(3, 64, 5, 9).unwrap());
}
