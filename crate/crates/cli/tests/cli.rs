use std::path::PathBuf;
use std::process::Command;

use fga_cli::{derive, evaluate_corpus, first_type_error, force_transitive, parse, parse_corpus, ParseError, SentenceAst};
use fga_core::compose::{Quantifier, Verdict};
use fga_core::{IllTyped, Lexicon, TarskianModel};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load(set: &str) -> (Lexicon, TarskianModel) {
    let lex = Lexicon::load(data(&format!("{set}.lexicon.json"))).unwrap();
    let model = TarskianModel::load(data(&format!("{set}.model.json")), &lex).unwrap();
    (lex, model)
}

fn fga(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fga")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn parses_fragment_shapes() {
    let (lex, _) = load("fragment");
    assert_eq!(
        parse("John loves Jaco", &lex).unwrap(),
        SentenceAst::Trans { subj: "John".into(), verb: "love".into(), obj: "Jaco".into() }
    );
    assert_eq!(
        parse("every dog sleeps", &lex).unwrap(),
        SentenceAst::Quant { q: Quantifier::Every, restrictor: "dog".into(), scope: "sleep".into(), object: None }
    );
    assert_eq!(parse("John sleeps Mary", &lex).unwrap_err(), ParseError::UnparsableSentence("John sleeps Mary".into()));
    assert_eq!(
        parse("John glorps Mary", &lex).unwrap_err(),
        ParseError::UnknownWord { word: "glorps".into(), position: 2 }
    );
    assert!(matches!(parse("tall and intelligent (wedge)", &lex).unwrap(), SentenceAst::Conj { mode: Some(_), .. }));
    assert!(matches!(parse("John is tall and Mary is short", &lex).unwrap(), SentenceAst::Conj { mode: None, .. }));
    assert!(matches!(parse("John is taller than Mary", &lex).unwrap(), SentenceAst::Comparative { .. }));
}

#[test]
fn forced_intransitive_with_object_is_ill_typed() {
    let (lex, _) = load("fragment");
    let der = force_transitive(&lex, "John", "sleep", "Mary").unwrap();
    assert!(matches!(first_type_error(&der), Some(IllTyped::GradeUnderflow { .. } | IllTyped::VanishingContraction)));
    // A genuine relation goes through.
    let der = force_transitive(&lex, "John", "love", "Jaco").unwrap();
    assert!(first_type_error(&der).is_none());
}

#[test]
fn transitive_trace_descends_grades() {
    let (lex, model) = load("fragment");
    let out = derive(&parse("Mary pets a dog", &lex).unwrap(), &lex, Some(&model)).unwrap();
    let grades: Vec<_> = out.derivation.steps.iter().map(|s| s.grade).collect();
    assert_eq!(grades, [Some(1), Some(0)]);
    assert_eq!(out.grade, Some(0));
    assert_eq!(out.truth, Some(true));
    assert!(out.derivation.steps.iter().all(|s| s.verdict == Verdict::WellTyped));
}

#[test]
fn polar_trace_shows_idempotent() {
    let (lex, model) = load("fragment");
    let out = derive(&parse("John is alive", &lex).unwrap(), &lex, Some(&model)).unwrap();
    let text = out.derivation.render();
    assert!(text.contains("idempotent alive = 0.5"), "{text}");
    assert_eq!(out.truth, Some(true));
}

#[test]
fn coercion_trace_has_telic_rotor() {
    let (lex, model) = load("sketches");
    let out = derive(&parse("John began the book", &lex).unwrap(), &lex, Some(&model)).unwrap();
    assert!(out.derivation.has_step("rotor TELIC"));
    assert!(out.derivation.has_step("coerce TELIC"));
    assert_eq!(out.truth, Some(true));
}

#[test]
fn missing_constitutive_support_is_an_anomaly() {
    let (lex, model) = load("sketches");
    let out = derive(&parse("John tied the brick", &lex).unwrap(), &lex, Some(&model)).unwrap();
    assert!(out.derivation.steps.iter().any(|s| matches!(s.verdict, Verdict::Anomaly(_))));
    assert!(first_type_error(&out.derivation).is_none());
    assert_eq!(out.truth, Some(false));
}

#[test]
fn corpora_match_and_obey_grade_law() {
    for set in ["fragment", "sketches", "artifacts"] {
        let (lex, model) = load(set);
        assert!(model.consistency_warnings(&lex).unwrap().is_empty(), "{set}");
        let rows = parse_corpus(&std::fs::read_to_string(data(&format!("{set}.corpus.txt"))).unwrap()).unwrap();
        for r in evaluate_corpus(&rows, &lex, &model) {
            assert!(r.passed(), "{set}: {}", r.render());
            let der = &r.outcome.as_ref().unwrap().derivation;
            for s in &der.steps {
                if let Verdict::Anomaly(msg) = &s.verdict {
                    assert!(!msg.contains("grade law"), "{set}: {}: {msg}", r.row.sentence);
                }
            }
        }
    }
}

#[test]
fn derive_output_is_deterministic() {
    let args = [
        "derive",
        "some cat pets every dog",
        "--lexicon",
        data("fragment.lexicon.json").to_str().unwrap(),
        "--model",
        data("fragment.model.json").to_str().unwrap(),
        "--trace",
    ]
    .map(String::from);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let first = fga(&args);
    assert_eq!(first.0, 0, "{}", first.2);
    assert_eq!(first, fga(&args));
}

#[test]
fn binary_exit_codes() {
    let lex = data("fragment.lexicon.json");
    let model = data("fragment.model.json");
    let (lex, model) = (lex.to_str().unwrap(), model.to_str().unwrap());

    let (code, out, _) = fga(&["dims", "4", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.trim() == "1 4 6 4 1 | 16"), "{out}");

    let (code, out, _) = fga(&["derive", "John sleeps", "--lexicon", lex, "--model", model]);
    assert_eq!(code, 0);
    assert!(out.contains("truth: 1"), "{out}");

    assert_eq!(fga(&["derive", "John sleeps Mary", "--lexicon", lex]).0, 2);
    assert_eq!(fga(&["derive", "John glorps", "--lexicon", lex]).0, 2);
    assert_eq!(fga(&["derive", "every dog sleeps", "--lexicon", lex]).0, 4);
    assert_eq!(fga(&["derive", "John sleeps", "--lexicon", "/nonexistent/lexicon.json"]).0, 1);

    let dir = std::env::temp_dir().join(format!("fga-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad_model = dir.join("bad.model.json");
    std::fs::write(&bad_model, "{\"individuals\": [\"john\"], \"colour\": 1}").unwrap();
    assert_eq!(fga(&["derive", "John sleeps", "--lexicon", lex, "--model", bad_model.to_str().unwrap()]).0, 5);
    let bad_lex = dir.join("bad.lexicon.json");
    std::fs::write(&bad_lex, "{\"layout\": {\"subspaces\": []}, \"entries\": [{\"name\": 3}]}").unwrap();
    assert_eq!(fga(&["derive", "John sleeps", "--lexicon", bad_lex.to_str().unwrap()]).0, 5);
    let wrong = dir.join("wrong.corpus.txt");
    std::fs::write(&wrong, "John sleeps => 0\n").unwrap();
    assert_eq!(fga(&["eval", "--corpus", wrong.to_str().unwrap(), "--lexicon", lex, "--model", model, "--strict"]).0, 1);
    std::fs::remove_dir_all(&dir).ok();
}
