use std::collections::BTreeMap;

use fga_core::{
    mk_entity, mk_hyponym, mk_relation, mk_unary, Error, ExtensionSource, Lexicon, SemanticSpace, SubspaceLayout,
    TarskianModel, TruthRule,
};
use fga_kernel::Multivector64;
use proptest::prelude::*;

fn v(s: &SemanticSpace, terms: &[(&str, f64)]) -> Multivector64 {
    s.element(terms).unwrap()
}

fn lexicon(n: usize) -> Lexicon {
    let s = SemanticSpace::build(SubspaceLayout::euclidean(n, 3, 0).unwrap(), None).unwrap();
    let mut lex = Lexicon::new(s.clone());
    for i in 1..=n {
        lex.insert(mk_entity(&s, &format!("x{i}"), &v(&s, &[(format!("e{i}").as_str(), 1.0)])).unwrap());
    }
    lex
}

fn identity_model(lex: &Lexicon, tau: f64) -> TarskianModel {
    let phi: BTreeMap<String, String> = lex.entities().map(|e| (e.name.clone(), e.name.clone())).collect();
    TarskianModel::new(lex, phi, tau).unwrap()
}

#[test]
fn truth_threshold_is_strict() {
    let lex = lexicon(2);
    let m = identity_model(&lex, 0.5);
    assert!(m.denote_truth(0.9));
    assert!(!m.denote_truth(0.0));
    assert!(!m.denote_truth(0.5));
    assert!(!m.denote_truth(-0.9));
    assert!(m.with_rule(TruthRule::Magnitude).denote_truth(-0.9));
}

#[test]
fn model_invariants() {
    let lex = lexicon(2);
    let phi: BTreeMap<String, String> = [("a".to_string(), "x1".to_string())].into();
    assert!(matches!(TarskianModel::new(&lex, phi.clone(), 0.5), Err(Error::Model(_))));
    let mut both = phi.clone();
    both.insert("b".into(), "x1".into());
    assert!(matches!(TarskianModel::new(&lex, both, 0.5), Err(Error::Model(_))));
    let mut ok = phi;
    ok.insert("b".into(), "x2".into());
    assert!(matches!(TarskianModel::new(&lex, ok.clone(), 0.0), Err(Error::Model(_))));
    assert_eq!(TarskianModel::new(&lex, ok, 0.5).unwrap().entity_of("b"), Some("x2"));
}

#[test]
fn extensions_from_geometry_and_listing() {
    let mut lex = lexicon(3);
    let s = lex.space().clone();
    lex.insert(mk_unary(&s, "p", &v(&s, &[("e1", 1.0)]), &v(&s, &[("f1", 1.0)])).unwrap());
    lex.insert(mk_unary(&s, "q", &v(&s, &[]), &v(&s, &[("f2", 1.0)])).unwrap());
    let m = identity_model(&lex, 0.5);
    let ext = m.extension("p", &lex).unwrap();
    assert_eq!(ext.members.into_iter().collect::<Vec<_>>(), vec!["x1".to_string()]);
    assert_eq!(ext.source, ExtensionSource::Geometric);
    assert!(m.extension("q", &lex).unwrap().members.is_empty());
    assert_eq!(m.extension("zz", &lex).unwrap_err(), Error::UnknownPredicate("zz".into()));

    let doc = r#"{"individuals": ["x1","x2","x3"], "assignments": {"x1":"x1","x2":"x2","x3":"x3"},
                  "extensions": {"p": ["x2"]}}"#;
    let listed = TarskianModel::from_json(doc, &lex).unwrap();
    let ext = listed.extension("p", &lex).unwrap();
    assert_eq!(ext.source, ExtensionSource::Explicit);
    assert!(ext.members.contains("x2") && ext.warning.is_some());
    assert_eq!(listed.consistency_warnings(&lex).unwrap().len(), 1);
    let bad = doc.replace("[\"x2\"]", "[\"nobody\"]");
    assert!(matches!(TarskianModel::from_json(&bad, &lex), Err(Error::Model(_))));
}

#[test]
fn relation_denotations() {
    let mut lex = lexicon(3);
    let s = lex.space().clone();
    lex.insert(mk_relation(&s, "r", &v(&s, &[("e1^e2", 1.0)])).unwrap());
    lex.insert(mk_relation(&s, "sym", &v(&s, &[("e1^e2", 1.0), ("e1^f1", 0.3)])).unwrap());
    let m = identity_model(&lex, 0.5);
    let pairs: Vec<_> = m.relation_denotation(lex.get("r").unwrap()).unwrap().into_iter().collect();
    assert_eq!(pairs, vec![("x1".to_string(), "x2".to_string())]);
    assert!(m.with_tau(2.0).relation_denotation(lex.get("r").unwrap()).unwrap().is_empty());
    // an antisymmetric bivector gives the converse pair a negative value; |α| > τ would accept it
    let mag = m.with_rule(TruthRule::Magnitude).relation_denotation(lex.get("r").unwrap()).unwrap();
    assert_eq!(mag.len(), 2);
}

#[test]
fn hyponym_entailment_reports_two_flags() {
    let mut lex = lexicon(3);
    let s = lex.space().clone();
    let dog = mk_unary(&s, "dog", &v(&s, &[("e2", 0.9), ("e3", 0.9)]), &v(&s, &[("f1", 1.0)])).unwrap();
    let poodle = mk_hyponym(&s, "poodle", &dog, 0.9, &v(&s, &[("e3", 0.8)])).unwrap();
    let cat = mk_unary(&s, "cat", &v(&s, &[("e1", 0.9)]), &v(&s, &[("f2", 1.0)])).unwrap();
    lex.insert(dog.clone());
    lex.insert(poodle.clone());
    lex.insert(cat.clone());
    let m = identity_model(&lex, 0.5);
    let e = m.entails(&poodle, &dog, &lex).unwrap();
    assert!(e.collinear && e.inclusion && e.holds());
    assert!(m.entails(&dog, &dog, &lex).unwrap().holds());
    let e = m.entails(&cat, &dog, &lex).unwrap();
    assert!(!e.collinear && !e.inclusion && !e.holds());
}

fn unit_entity_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, n).prop_filter("non-zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Every atom and every pair, in random models of up to eight individuals.
    #[test]
    fn soundness_is_exhaustive(
        n in 2usize..=8,
        ents in prop::collection::vec(unit_entity_strategy(8), 8),
        p in prop::collection::vec(-1.0..1.0f64, 8),
        r in prop::collection::vec(-1.0..1.0f64, 28),
        tau in 0.05..0.9f64,
    ) {
        let s = SemanticSpace::build(SubspaceLayout::euclidean(8, 1, 0).unwrap(), None).unwrap();
        let mut lex = Lexicon::new(s.clone());
        let name = |i: usize| format!("e{}", i + 1);
        for (i, c) in ents.iter().take(n).enumerate() {
            let terms: Vec<(String, f64)> = c.iter().enumerate().map(|(k, x)| (name(k), *x)).collect();
            let refs: Vec<(&str, f64)> = terms.iter().map(|(k, x)| (k.as_str(), *x)).collect();
            lex.insert(mk_entity(&s, &format!("d{i}"), &v(&s, &refs)).unwrap());
        }
        let pt: Vec<(String, f64)> = p.iter().enumerate().map(|(k, x)| (name(k), *x)).collect();
        let prefs: Vec<(&str, f64)> = pt.iter().map(|(k, x)| (k.as_str(), *x)).collect();
        lex.insert(mk_unary(&s, "P", &v(&s, &prefs), &v(&s, &[("f1", 1.0)])).unwrap());
        let mut rel = Multivector64::zero(s.algebra());
        let mut k = 0;
        for i in 0..8 {
            for j in i + 1..8 {
                rel += &v(&s, &[(format!("e{}^e{}", i + 1, j + 1).as_str(), r[k])]);
                k += 1;
            }
        }
        lex.insert(mk_relation(&s, "R", &rel).unwrap());
        let model = identity_model(&lex, tau);
        let pred = lex.get("P").unwrap();
        let rel = lex.get("R").unwrap();
        for a in model.domain() {
            prop_assert!(model.soundness_atom(pred, a, &lex).unwrap().agrees());
            for b in model.domain() {
                prop_assert!(model.soundness_rel(rel, a, b, &lex).unwrap().agrees());
            }
        }
    }
}
