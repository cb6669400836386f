//! Recursive-descent parser for the fragment grammar.

use fga_core::compose::{ConjunctionMode, DegreeModifier, Quantifier};
use fga_core::{LexicalEntry, Lexicon, SemanticKind};

/// A parsed fragment sentence or phrase. Leaves are lexicon entry names.
#[derive(Debug, Clone, PartialEq)]
pub enum SentenceAst {
    /// A single lexical item, e.g. `John` or `love`.
    Word(String),
    Intrans { subj: String, verb: String },
    Trans { subj: String, verb: String, obj: String },
    /// `Q restrictor scope`, optionally with a quantified object: `Q N V Q' N'`.
    Quant { q: Quantifier, restrictor: String, scope: String, object: Option<(Quantifier, String)> },
    Copula { subj: String, pred: String },
    DegreeCopula { subj: String, modifier: DegreeModifier, pred: String },
    Comparative { subj: String, pred: String, obj: String },
    /// Sentential conjunction (`mode = None`) or predicate conjunction.
    Conj { left: Box<SentenceAst>, right: Box<SentenceAst>, mode: Option<ConjunctionMode> },
    Coerced { subj: String, verb: String, np: String },
    ModifiedNp { adj: String, noun: String },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown word `{word}` at position {position}")]
    UnknownWord { word: String, position: usize },
    #[error("cannot parse `{0}` in the fragment grammar")]
    UnparsableSentence(String),
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    position: usize,
}

const DETERMINERS: [&str; 2] = ["a", "the"];
const KEYWORDS: [&str; 9] = ["a", "the", "some", "every", "is", "and", "very", "slightly", "than"];

/// Parses one sentence. Parenthesised annotations such as `(avg)` or `(scalar)` are
/// accepted at the end; `(avg)` and `(wedge)` select the predicate conjunction mode.
pub fn parse(sentence: &str, lexicon: &Lexicon) -> Result<SentenceAst, ParseError> {
    let (body, annotations) = split_annotations(sentence);
    let tokens: Vec<Token> = body
        .split_whitespace()
        .enumerate()
        .map(|(i, w)| Token { text: w.trim_end_matches(['.', '?', '!']).to_string(), position: i + 1 })
        .filter(|t| !t.text.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(ParseError::UnparsableSentence(sentence.to_string()));
    }
    let p = Parser { lexicon, sentence: sentence.trim() };
    p.check_vocabulary(&tokens)?;
    let mode = if annotations.iter().any(|a| a == "wedge") {
        ConjunctionMode::Wedge
    } else {
        ConjunctionMode::Average
    };
    p.sentence(&tokens, mode)
}

fn split_annotations(sentence: &str) -> (String, Vec<String>) {
    let mut body = sentence.trim().to_string();
    let mut notes = Vec::new();
    while body.ends_with(')') {
        let Some(open) = body.rfind('(') else { break };
        notes.push(body[open + 1..body.len() - 1].trim().to_lowercase());
        body.truncate(open);
        body = body.trim_end().to_string();
    }
    (body, notes)
}

struct Parser<'a> {
    lexicon: &'a Lexicon,
    sentence: &'a str,
}

impl<'a> Parser<'a> {
    fn fail(&self) -> ParseError {
        ParseError::UnparsableSentence(self.sentence.to_string())
    }

    fn check_vocabulary(&self, tokens: &[Token]) -> Result<(), ParseError> {
        for t in tokens {
            let w = t.text.to_lowercase();
            if KEYWORDS.contains(&w.as_str()) || self.word(&w).is_some() || self.comparative(&w).is_some() {
                continue;
            }
            return Err(ParseError::UnknownWord { word: t.text.clone(), position: t.position });
        }
        Ok(())
    }

    /// Lexicon lookup with 3rd-person and past-tense suffixes stripped as a fallback.
    fn word(&self, w: &str) -> Option<&'a LexicalEntry> {
        if let Some(e) = self.lexicon.lookup(w) {
            return Some(e);
        }
        for suffix in ["es", "s", "ed", "d"] {
            if let Some(stem) = w.strip_suffix(suffix) {
                if let Some(e) = self.lexicon.lookup(stem).filter(|e| e.kind != SemanticKind::Entity) {
                    return Some(e);
                }
            }
        }
        None
    }

    fn comparative(&self, w: &str) -> Option<&'a LexicalEntry> {
        let stem = w.strip_suffix("er")?;
        self.lexicon.lookup(stem).filter(|e| e.kind == SemanticKind::GradablePred)
    }

    fn entry(&self, t: &Token) -> Option<&'a LexicalEntry> {
        self.word(&t.text.to_lowercase())
    }

    fn is(&self, t: &Token, kw: &str) -> bool {
        t.text.eq_ignore_ascii_case(kw)
    }

    fn quantifier(&self, t: &Token) -> Option<Quantifier> {
        match t.text.to_lowercase().as_str() {
            "some" => Some(Quantifier::Some),
            "every" => Some(Quantifier::Every),
            _ => None,
        }
    }

    fn sentence(&self, tokens: &[Token], mode: ConjunctionMode) -> Result<SentenceAst, ParseError> {
        if let Some(i) = tokens.iter().position(|t| self.is(t, "and")) {
            let (l, r) = (&tokens[..i], &tokens[i + 1..]);
            if let (Ok(left), Ok(right)) = (self.clause(l), self.clause(r)) {
                if !matches!(left, SentenceAst::Word(_)) && !matches!(right, SentenceAst::Word(_)) {
                    return Ok(SentenceAst::Conj { left: Box::new(left), right: Box::new(right), mode: None });
                }
            }
            let left = self.predicate_word(l)?;
            let right = self.predicate_word(r)?;
            return Ok(SentenceAst::Conj {
                left: Box::new(SentenceAst::Word(left)),
                right: Box::new(SentenceAst::Word(right)),
                mode: Some(mode),
            });
        }
        self.clause(tokens)
    }

    fn predicate_word(&self, tokens: &[Token]) -> Result<String, ParseError> {
        match tokens {
            [t] => match self.entry(t) {
                Some(e) if e.kind.is_predicate() => Ok(e.name.clone()),
                _ => Err(self.fail()),
            },
            _ => Err(self.fail()),
        }
    }

    fn name(&self, t: &Token) -> Option<String> {
        self.entry(t).filter(|e| e.kind == SemanticKind::Entity).map(|e| e.name.clone())
    }

    /// An object noun phrase: a name, or a determiner plus a noun.
    fn object(&self, tokens: &[Token]) -> Option<String> {
        match tokens {
            [t] => self.name(t),
            [d, n] if DETERMINERS.iter().any(|k| self.is(d, k)) => {
                self.entry(n).filter(|e| e.kind != SemanticKind::BinaryRel).map(|e| e.name.clone())
            }
            _ => None,
        }
    }

    fn clause(&self, tokens: &[Token]) -> Result<SentenceAst, ParseError> {
        let fail = || self.fail();
        if let [w] = tokens {
            let e = self.entry(w).ok_or_else(fail)?;
            return Ok(SentenceAst::Word(e.name.clone()));
        }
        if let Some(q) = tokens.first().and_then(|t| self.quantifier(t)) {
            return self.quantified(q, &tokens[1..]);
        }
        match tokens {
            [w] => {
                let e = self.entry(w).ok_or_else(fail)?;
                Ok(SentenceAst::Word(e.name.clone()))
            }
            [adj, noun] if self.entry(adj).is_some_and(|e| e.modifier.is_some()) && self.name(adj).is_none() => {
                let noun = self.entry(noun).filter(|e| e.kind != SemanticKind::Entity).ok_or_else(fail)?;
                Ok(SentenceAst::ModifiedNp { adj: self.entry(adj).unwrap().name.clone(), noun: noun.name.clone() })
            }
            [subj, cop, rest @ ..] if self.is(cop, "is") => {
                let subj = self.name(subj).ok_or_else(fail)?;
                self.copula(subj, rest)
            }
            [subj, verb, rest @ ..] => {
                let subj = self.name(subj).ok_or_else(fail)?;
                let v = self.entry(verb).ok_or_else(fail)?;
                match (v.kind, rest) {
                    (k, []) if k.is_predicate() => Ok(SentenceAst::Intrans { subj, verb: v.name.clone() }),
                    (SemanticKind::BinaryRel, obj) => {
                        let obj = self.object(obj).ok_or_else(fail)?;
                        if v.coerces.is_some() {
                            Ok(SentenceAst::Coerced { subj, verb: v.name.clone(), np: obj })
                        } else {
                            Ok(SentenceAst::Trans { subj, verb: v.name.clone(), obj })
                        }
                    }
                    _ => Err(fail()),
                }
            }
            _ => Err(fail()),
        }
    }

    fn copula(&self, subj: String, rest: &[Token]) -> Result<SentenceAst, ParseError> {
        let fail = || self.fail();
        let pred_of = |t: &Token| self.entry(t).filter(|e| e.kind.is_predicate()).map(|e| e.name.clone());
        match rest {
            [p] => Ok(SentenceAst::Copula { subj, pred: pred_of(p).ok_or_else(fail)? }),
            [d, p] if DETERMINERS.iter().any(|k| self.is(d, k)) => {
                Ok(SentenceAst::Copula { subj, pred: pred_of(p).ok_or_else(fail)? })
            }
            [m, p] if self.is(m, "very") || self.is(m, "slightly") => {
                let modifier = if self.is(m, "very") { DegreeModifier::Very } else { DegreeModifier::Slightly };
                Ok(SentenceAst::DegreeCopula { subj, modifier, pred: pred_of(p).ok_or_else(fail)? })
            }
            [c, than, o] if self.is(than, "than") => {
                let pred = self.lexicon.lookup(&c.text).filter(|e| e.kind == SemanticKind::GradablePred);
                let pred = pred.or_else(|| self.comparative(&c.text.to_lowercase())).ok_or_else(fail)?;
                let obj = self.name(o).ok_or_else(fail)?;
                Ok(SentenceAst::Comparative { subj, pred: pred.name.clone(), obj })
            }
            _ => Err(fail()),
        }
    }

    fn quantified(&self, q: Quantifier, tokens: &[Token]) -> Result<SentenceAst, ParseError> {
        let fail = || self.fail();
        let noun = |t: &Token| self.entry(t).filter(|e| e.kind.is_predicate()).map(|e| e.name.clone());
        match tokens {
            [n, v] => {
                let scope = noun(v).ok_or_else(fail)?;
                Ok(SentenceAst::Quant { q, restrictor: noun(n).ok_or_else(fail)?, scope, object: None })
            }
            [n, cop, p] if self.is(cop, "is") => {
                let scope = noun(p).ok_or_else(fail)?;
                Ok(SentenceAst::Quant { q, restrictor: noun(n).ok_or_else(fail)?, scope, object: None })
            }
            [n, cop, d, p] if self.is(cop, "is") && DETERMINERS.iter().any(|k| self.is(d, k)) => {
                let scope = noun(p).ok_or_else(fail)?;
                Ok(SentenceAst::Quant { q, restrictor: noun(n).ok_or_else(fail)?, scope, object: None })
            }
            [n, v, q2, n2] => {
                let verb = self.entry(v).filter(|e| e.kind == SemanticKind::BinaryRel).ok_or_else(fail)?;
                let q2 = self.quantifier(q2).ok_or_else(fail)?;
                Ok(SentenceAst::Quant {
                    q,
                    restrictor: noun(n).ok_or_else(fail)?,
                    scope: verb.name.clone(),
                    object: Some((q2, noun(n2).ok_or_else(fail)?)),
                })
            }
            _ => Err(fail()),
        }
    }
}
