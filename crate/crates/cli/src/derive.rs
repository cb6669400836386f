//! Turns parsed sentences into derivations and, with a model, truth values.

use std::collections::BTreeSet;

use fga_core::compose::{
    coerce, compare, conjoin, degree_modify, inner_apply, modify, quantify, ConjunctionMode, Derivation,
    DegreeModifier, Quantifier, TruthCondition, Verdict,
};
use fga_core::{
    check_values, CompositionOp, Error, IllTyped, LexicalEntry, Lexicon, ModifierMode, SemanticKind, Subspace,
    TarskianModel, TypeVerdict,
};
use fga_kernel::Multivector64;

use crate::parse::SentenceAst;

/// A finished derivation with its value and, when a model was given, its truth value.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub derivation: Derivation,
    /// Final scalar for sentences; `None` for phrases.
    pub scalar: Option<f64>,
    pub grade: Option<usize>,
    pub truth: Option<bool>,
}

struct Ctx<'a> {
    lex: &'a Lexicon,
    model: Option<&'a TarskianModel>,
    der: Derivation,
}

fn lit(name: &str, value: &Multivector64, kind: SemanticKind) -> LexicalEntry {
    LexicalEntry::new(name, kind, value.clone())
}

fn condition_for(p: &LexicalEntry) -> TruthCondition {
    match p.kind {
        SemanticKind::PolarPred => TruthCondition::Positive,
        _ => TruthCondition::Threshold(p.degree_params.as_ref().and_then(|d| d.threshold)),
    }
}

fn quantifier_name(q: Quantifier) -> &'static str {
    match q {
        Quantifier::Some => "some",
        Quantifier::Every => "every",
    }
}

impl<'a> Ctx<'a> {
    fn get(&self, name: &str) -> Result<&'a LexicalEntry, Error> {
        self.lex.get(name)
    }

    /// Records a contraction together with the grade-law check. A well-typed step whose
    /// computed grade disagrees with the law is marked rather than passed silently.
    fn contract(
        &mut self,
        op: CompositionOp,
        left: (&str, &Multivector64, SemanticKind),
        right: (&str, &Multivector64, SemanticKind),
        inherited: Option<Verdict>,
    ) -> Result<Multivector64, Error> {
        let value = match op {
            CompositionOp::LeftContraction => left.1.lc(right.1)?,
            CompositionOp::RightContraction => left.1.rc(right.1)?,
            CompositionOp::Wedge => left.1.wedge(right.1)?,
        };
        let check = check_values(left.1, left.2, op, right.1, right.2);
        let name = match op {
            CompositionOp::LeftContraction => "left contraction",
            CompositionOp::RightContraction => "right contraction",
            CompositionOp::Wedge => "wedge",
        };
        let verdict = match (&inherited, &check) {
            (Some(v), _) => v.clone(),
            (None, TypeVerdict::WellTyped(_)) => Verdict::WellTyped,
            (None, TypeVerdict::IllTyped(r)) => Verdict::IllTyped(r.clone()),
        };
        let space = self.lex.space();
        let step = self.der.record(space, name, &[left.0, right.0], &value, verdict);
        if let (TypeVerdict::WellTyped(g), Verdict::WellTyped) = (&check, &step.verdict) {
            if step.grade != Some(*g) {
                step.verdict = Verdict::Anomaly(format!("grade law expects {g}"));
            }
        }
        Ok(value)
    }

    fn inner_product(&mut self, p: &LexicalEntry, x: &LexicalEntry) -> Result<f64, Error> {
        let alpha = p.value.scalar_product(&x.value)?;
        let space = self.lex.space();
        let value = Multivector64::scalar(space.algebra(), alpha);
        let step = self.der.record(space, "inner product", &[&p.name, &x.name], &value, Verdict::WellTyped);
        if p.kind == SemanticKind::PolarPred {
            step.notes.push(format!("idempotent {} = {}; scalar part ½(e·x)", p.name, space.format(&p.value)));
        }
        Ok(alpha)
    }

    fn lexical(&mut self, name: &str) -> Result<(), Error> {
        let e = self.get(name)?;
        let space = self.lex.space();
        let step = self.der.record(space, "lexical entry", &[&e.name], &e.value, Verdict::WellTyped);
        step.notes.push(format!("{} = {}", e.kind, space.format(&e.value)));
        self.der.result = Some(e.value.clone());
        Ok(())
    }

    fn finish_scalar(&mut self, value: f64, condition: TruthCondition) {
        self.der.result = Some(Multivector64::scalar(self.lex.space().algebra(), value));
        self.der.condition = Some(condition);
    }

    fn sentence(&mut self, ast: &SentenceAst) -> Result<Option<f64>, Error> {
        match ast {
            SentenceAst::Word(w) => {
                self.lexical(w)?;
                Ok(None)
            }
            SentenceAst::Intrans { subj, verb: pred } | SentenceAst::Copula { subj, pred } => {
                let (p, x) = (self.get(pred)?, self.get(subj)?);
                let alpha = self.inner_product(p, x)?;
                self.finish_scalar(alpha, condition_for(p));
                Ok(Some(alpha))
            }
            SentenceAst::DegreeCopula { subj, modifier, pred } => {
                let (p, x) = (self.get(pred)?, self.get(subj)?);
                let modified = degree_modify(p, *modifier)?;
                let label = match modifier {
                    DegreeModifier::Very => "very",
                    DegreeModifier::Slightly => "slightly",
                };
                let space = self.lex.space();
                let params = p.degree_params.as_ref().ok_or_else(|| Error::NotGradable(p.name.clone()))?;
                let alpha_m = if *modifier == DegreeModifier::Very { params.very } else { params.slightly };
                let name = format!("{label} {}", p.name);
                let step = self.der.record(space, &format!("degree modifier {label}"), &[&p.name], &modified, Verdict::WellTyped);
                step.notes.push(format!("α = {alpha_m}"));
                let alpha = self.inner_product(&lit(&name, &modified, p.kind), x)?;
                self.finish_scalar(alpha, condition_for(p));
                Ok(Some(alpha))
            }
            SentenceAst::Comparative { subj, pred, obj } => {
                let (t, a, b) = (self.get(pred)?, self.get(subj)?, self.get(obj)?);
                let space = self.lex.space();
                let te = space.project(&t.value, Subspace::Entity);
                self.der.record(space, "entity projection", &[&t.name], &te, Verdict::WellTyped);
                let diff = &a.value - &b.value;
                self.der.record(space, "difference", &[&a.name, &b.name], &diff, Verdict::WellTyped);
                let alpha = compare(space, t, a, b)?;
                let value = Multivector64::scalar(space.algebra(), alpha);
                let te_name = format!("{}_E", t.name);
                let diff_name = format!("{} - {}", a.name, b.name);
                let step = self.der.record(space, "inner product", &[&te_name, &diff_name], &value, Verdict::WellTyped);
                step.notes.push("threshold-free: positive iff the subject has more of the property".into());
                self.finish_scalar(alpha, TruthCondition::Positive);
                Ok(Some(alpha))
            }
            SentenceAst::Trans { subj, verb, obj } => {
                let (v, s, o) = (self.get(verb)?, self.get(subj)?, self.get(obj)?);
                let (partial, inherited) = match v.targets {
                    Some(q) => {
                        let inner = inner_apply(v, o, Some(q))?;
                        let space = self.lex.space();
                        let qr = &o.qualia[&q];
                        let rotor_name = format!("{q} rotor of {}", o.name);
                        let step = self.der.record(space, &format!("rotor {q}"), &[&o.name], &inner.rotated, Verdict::WellTyped);
                        step.notes.push(format!(
                            "exp(-θ/2 B), B = {}, θ = {}",
                            space.format(&qr.plane),
                            qr.angle
                        ));
                        step.notes.push(format!("{} -> {}", space.format(&o.value), space.format(&inner.rotated)));
                        let verdict = inner.anomalous.then(|| {
                            Verdict::Anomaly(format!("{} has almost no {} support for {}", o.name, q, v.name))
                        });
                        let rotated = format!("{} ({rotor_name})", o.name);
                        let partial = self.contract(
                            CompositionOp::RightContraction,
                            (&v.name, &v.value, v.kind),
                            (&rotated, &inner.rotated, o.kind),
                            verdict.clone(),
                        )?;
                        (partial, verdict)
                    }
                    None => {
                        let partial = self.contract(
                            CompositionOp::RightContraction,
                            (&v.name, &v.value, v.kind),
                            (&o.name, &o.value, o.kind),
                            None,
                        )?;
                        (partial, None)
                    }
                };
                let partial_name = format!("{} ⌞ {}", v.name, o.name);
                let full = self.contract(
                    CompositionOp::LeftContraction,
                    (&s.name, &s.value, s.kind),
                    (&partial_name, &partial, SemanticKind::UnaryPred),
                    inherited,
                )?;
                let alpha = full.scalar_part();
                self.finish_scalar(alpha, TruthCondition::Threshold(None));
                Ok(Some(alpha))
            }
            SentenceAst::Coerced { subj, verb, np } => {
                let (v, s, o) = (self.get(verb)?, self.get(subj)?, self.get(np)?);
                let q = v.coerces.ok_or_else(|| Error::KindMismatch { name: v.name.clone(), expected: "a coercing verb".into() })?;
                let c = coerce(self.lex.space(), o, q)?;
                let space = self.lex.space();
                let step = self.der.record(space, &format!("select {q}"), &[&o.name], &c.selected, Verdict::WellTyped);
                step.notes.push(format!("grade-{} component: {}", q.grade(), space.format(&c.selected)));
                let step = self.der.record(space, &format!("rotor {q}"), &[&o.name], &c.rotated, Verdict::WellTyped);
                step.notes.push(format!("exp(-θ/2 B), B = {}, θ = {}", space.format(&c.rotor.plane), c.rotor.angle));
                if let Some(rt) = &c.record {
                    step.notes.push(format!("record type projected to {}: {rt}", q.label()));
                }
                let step = self.der.record(space, &format!("coerce {q}"), &[&o.name], &c.predicate, Verdict::WellTyped);
                step.notes.push(format!("predicate: {}", space.format(&c.predicate)));
                let coerced = format!("{}†", o.name);
                let partial = self.contract(
                    CompositionOp::RightContraction,
                    (&v.name, &v.value, v.kind),
                    (&coerced, &c.predicate, SemanticKind::UnaryPred),
                    None,
                )?;
                let partial_name = format!("{} ⌞ {coerced}", v.name);
                let full = self.contract(
                    CompositionOp::LeftContraction,
                    (&s.name, &s.value, s.kind),
                    (&partial_name, &partial, SemanticKind::UnaryPred),
                    None,
                )?;
                let alpha = full.scalar_part();
                self.finish_scalar(alpha, TruthCondition::Threshold(None));
                Ok(Some(alpha))
            }
            SentenceAst::Quant { q, restrictor, scope, object } => self.quantified(*q, restrictor, scope, object.as_ref()),
            SentenceAst::Conj { left, right, mode: None } => {
                let l = self.sentence(left)?;
                let lc = self.der.condition.take();
                let r = self.sentence(right)?;
                let rc = self.der.condition.take();
                let (Some(l), Some(r), Some(lc), Some(rc)) = (l, r, lc, rc) else {
                    return Err(Error::GradeMismatch {
                        op: "conjunction",
                        expected: "two sentences".into(),
                        found: "a phrase".into(),
                    });
                };
                let space = self.lex.space();
                let value = Multivector64::scalar(space.algebra(), l.min(r));
                let step = self.der.record(space, "boolean conjunction", &["left", "right"], &value, Verdict::WellTyped);
                step.notes.push("each conjunct is compared with its own threshold; the value is min(left, right)".into());
                self.finish_scalar(l.min(r), TruthCondition::All(vec![(l, lc), (r, rc)]));
                Ok(Some(l.min(r)))
            }
            SentenceAst::Conj { left, right, mode: Some(mode) } => {
                let (SentenceAst::Word(a), SentenceAst::Word(b)) = (left.as_ref(), right.as_ref()) else {
                    return Err(Error::GradeMismatch {
                        op: "conjunction",
                        expected: "two predicates".into(),
                        found: "a sentence".into(),
                    });
                };
                let (x, y) = (self.get(a)?, self.get(b)?);
                let value = conjoin(&x.value, &y.value, *mode)?;
                let op = match mode {
                    ConjunctionMode::Average => "average conjunction",
                    ConjunctionMode::Wedge => "wedge conjunction",
                    ConjunctionMode::Boolean => "boolean conjunction",
                };
                let space = self.lex.space();
                self.der.record(space, op, &[&x.name, &y.name], &value, Verdict::WellTyped);
                self.der.result = Some(value);
                Ok(None)
            }
            SentenceAst::ModifiedNp { adj, noun } => {
                let (a, n) = (self.get(adj)?, self.get(noun)?);
                let mode = a.modifier.as_ref().map_or(ModifierMode::Intersective, |m| m.mode);
                let m = modify(self.lex.space(), a, n, mode)?;
                let space = self.lex.space();
                let op = match mode {
                    ModifierMode::Intersective => "intersective modification",
                    ModifierMode::Subsective => "subsective modification",
                    ModifierMode::Privative => "privative modification",
                };
                let step = self.der.record(space, op, &[&a.name, &n.name], &m.value, Verdict::WellTyped);
                step.notes.push(m.description.clone());
                step.notes.push(format!("result: {}", space.format(&m.value)));
                self.der.result = Some(m.value);
                Ok(None)
            }
        }
    }

    fn quantified(
        &mut self,
        q: Quantifier,
        restrictor: &str,
        scope: &str,
        object: Option<&(Quantifier, String)>,
    ) -> Result<Option<f64>, Error> {
        let r = self.get(restrictor)?;
        let s = self.get(scope)?;
        let p_only: BTreeSet<Subspace> = [Subspace::Predicate].into();
        let qn = quantifier_name(q);
        let rp = format!("{}_P", r.name);
        self.der.record_symbolic(&format!("{qn} quantifier"), &[qn], 2, p_only.clone(), Verdict::Denotational);
        let value = match object {
            None => {
                let sp = format!("{}_P", s.name);
                let inner = format!("{qn} ⌞ {sp}");
                self.der.record_symbolic("right contraction", &[qn, &sp], 1, p_only, Verdict::Denotational);
                self.der.record_symbolic("left contraction", &[&rp, &inner], 0, BTreeSet::new(), Verdict::Denotational);
                self.der.remarks.push("quantifier truth is computed over the model's extensions".into());
                quantify(q, r, s, self.lex, self.model)?
            }
            Some((q2, noun)) => {
                let n = self.get(noun)?;
                let q2n = quantifier_name(*q2);
                let np = format!("{}_P", n.name);
                let gq = format!("{q2n} ⌞ {np}");
                self.der.record_symbolic("right contraction", &[q2n, &np], 1, p_only.clone(), Verdict::Denotational);
                let prop = format!("{gq} ⌟ {}", s.name);
                self.der.record_symbolic("left contraction", &[&gq, &s.name], 1, p_only.clone(), Verdict::Denotational);
                let outer = format!("{qn} ⌞ [{prop}]");
                self.der.record_symbolic("right contraction", &[qn, &prop], 1, p_only, Verdict::Denotational);
                self.der.record_symbolic("left contraction", &[&rp, &outer], 0, BTreeSet::new(), Verdict::Denotational);
                self.der.remarks.push(format!(
                    "one scope reading: {qn} {} outscopes {q2n} {}; computed over the model's extensions",
                    r.name, n.name
                ));
                self.mixed(q, r, s, *q2, n)?
            }
        };
        self.finish_scalar(value, TruthCondition::Boolean);
        Ok(Some(value))
    }

    fn mixed(
        &self,
        q: Quantifier,
        r: &LexicalEntry,
        rel: &LexicalEntry,
        q2: Quantifier,
        n: &LexicalEntry,
    ) -> Result<f64, Error> {
        let model = self.model.ok_or(Error::ModelRequired)?;
        let a = model.extension(&r.name, self.lex)?.members;
        let b = model.extension(&n.name, self.lex)?.members;
        let pairs = model.relation(&rel.name, self.lex)?.members;
        let objects_of = |x: &String| -> BTreeSet<String> {
            b.iter().filter(|y| pairs.contains(&((*x).clone(), (*y).clone()))).cloned().collect()
        };
        let inner = |x: &String| q2.holds(&b, &objects_of(x));
        let holders: BTreeSet<String> = a.iter().filter(|x| inner(x)).cloned().collect();
        Ok(if q.holds(&a, &holders) { 1.0 } else { 0.0 })
    }
}

/// Builds the derivation of a parsed sentence. Truth is evaluated when a model is given.
pub fn derive(ast: &SentenceAst, lexicon: &Lexicon, model: Option<&TarskianModel>) -> Result<Outcome, Error> {
    let mut ctx = Ctx { lex: lexicon, model, der: Derivation::new() };
    let scalar = ctx.sentence(ast)?;
    let der = ctx.der;
    let grade = der.final_grade();
    let truth = match (scalar, &der.condition, model) {
        (Some(v), Some(c), Some(m)) => Some(m.eval(v, c)),
        _ => None,
    };
    Ok(Outcome { derivation: der, scalar, grade, truth })
}

/// Forces `subj verb obj` through curried contraction regardless of the verb's kind.
/// Used to show that a mis-typed composition fails in the algebra itself.
pub fn force_transitive(lexicon: &Lexicon, subj: &str, verb: &str, obj: &str) -> Result<Derivation, Error> {
    let mut ctx = Ctx { lex: lexicon, model: None, der: Derivation::new() };
    let (v, s, o) = (ctx.get(verb)?, ctx.get(subj)?, ctx.get(obj)?);
    let partial = ctx.contract(CompositionOp::RightContraction, (&v.name, &v.value, v.kind), (&o.name, &o.value, o.kind), None)?;
    let partial_name = format!("{} ⌞ {}", v.name, o.name);
    let partial_kind = if partial.homogeneous_grade(1e-12) == Some(0) { SemanticKind::TruthValue } else { SemanticKind::UnaryPred };
    ctx.contract(CompositionOp::LeftContraction, (&s.name, &s.value, s.kind), (&partial_name, &partial, partial_kind), None)?;
    Ok(ctx.der)
}

/// First ill-typed step, if any.
pub fn first_type_error(der: &Derivation) -> Option<&IllTyped> {
    der.steps.iter().find_map(|s| match &s.verdict {
        Verdict::IllTyped(r) => Some(r),
        _ => None,
    })
}
