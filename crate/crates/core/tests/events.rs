use fga_core::compose::{apply_role_template, build_event, grade_descent, query_filler, query_role, role_template};
use fga_core::{mk_entity, Error, LexicalEntry, SemanticSpace, Subspace, SubspaceLayout};
use proptest::prelude::*;

fn space(entity: usize, roles: usize) -> SemanticSpace {
    let mut s = SemanticSpace::build(SubspaceLayout::euclidean(entity, 0, roles).unwrap(), None).unwrap();
    let labels: Vec<String> = (1..=roles).map(|i| format!("r{i}")).collect();
    s.register_roles(&labels).unwrap();
    s
}

fn filler(s: &SemanticSpace, name: &str, coeffs: &[f64]) -> LexicalEntry {
    let terms: Vec<(String, f64)> = coeffs.iter().enumerate().map(|(i, c)| (format!("e{}", i + 1), *c)).collect();
    let refs: Vec<(&str, f64)> = terms.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    mk_entity(s, name, &s.element(&refs).unwrap()).unwrap()
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, n).prop_filter("non-zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn unbinding_is_exact(roles in 1usize..=4, raw in prop::collection::vec(coeffs(5), 4)) {
        let s = space(5, 4);
        let fillers: Vec<LexicalEntry> = raw.iter().enumerate().map(|(i, c)| filler(&s, &format!("x{i}"), c)).collect();
        let labels: Vec<String> = s.roles().to_vec();
        let pairs: Vec<(&str, &LexicalEntry)> = labels[..roles].iter().map(String::as_str).zip(fillers.iter()).collect();
        let event = build_event(&s, &pairs).unwrap();
        for (role, f) in &pairs {
            let got = query_filler(&event, &s.role_key(role).unwrap()).unwrap();
            prop_assert!((&got - &f.value).max_abs() < 1e-12);
        }
        for unused in &labels[roles..] {
            let got = query_filler(&event, &s.role_key(unused).unwrap()).unwrap();
            prop_assert!(got.max_abs() < 1e-12);
        }
    }

    #[test]
    fn role_query_recovers_role(raw in coeffs(4)) {
        let s = space(4, 2);
        let x = filler(&s, "x", &raw);
        let event = build_event(&s, &[("r2", &x)]).unwrap();
        let role = query_role(&event, &x.value).unwrap();
        prop_assert!((&role - &s.role_key("r2").unwrap()).max_abs() < 1e-12);
    }
}

#[test]
fn bind_rejects_wrong_subspaces() {
    let s = space(3, 2);
    let x = filler(&s, "x", &[1.0]);
    let err = fga_core::compose::bind(&s, &x.value, &x.value).unwrap_err();
    assert!(matches!(err, Error::SupportViolation { .. }));
    let r = s.role_key("r1").unwrap();
    assert!(matches!(fga_core::compose::bind(&s, &r, &r), Err(Error::SupportViolation { .. })));
}

#[test]
fn descent_and_underflow() {
    let s = space(3, 2);
    let x = filler(&s, "x", &[0.0, 1.0]);
    let event = build_event(&s, &[("r1", &x)]).unwrap();
    let got = grade_descent(&event.value, &[s.role_key("r1").unwrap()]).unwrap();
    assert!((&got - &x.value).max_abs() < 1e-12);
    let probes = vec![s.role_key("r1").unwrap(); 3];
    assert_eq!(grade_descent(&event.value, &probes).unwrap_err(), Error::GradeUnderflow { grade: 2, probes: 3 });
}

#[test]
fn templates_follow_registration_order() {
    let s = space(3, 2);
    let a = filler(&s, "a", &[1.0]);
    let b = filler(&s, "b", &[0.0, 1.0]);
    let t = role_template(&s, &["r1", "r2"]).unwrap();
    assert_eq!(s.support(&t).into_iter().collect::<Vec<_>>(), vec![Subspace::Role]);
    let ev = apply_role_template(&s, &t, &[&a, &b]).unwrap();
    let direct = build_event(&s, &[("r1", &a), ("r2", &b)]).unwrap();
    assert!((&ev.value - &direct.value).max_abs() < 1e-15);
    assert_eq!(apply_role_template(&s, &t, &[&a]).unwrap_err(), Error::ArityMismatch { expected: 2, got: 1 });
}
