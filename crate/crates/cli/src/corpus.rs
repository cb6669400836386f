//! Corpus files: one sentence per line, optionally `=> 1`, `=> 0` or `=> grade N`.

use fga_core::{Lexicon, TarskianModel};

use crate::derive::{derive, Outcome};
use crate::parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Truth(bool),
    Grade(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRow {
    pub line: usize,
    pub sentence: String,
    pub expected: Option<Expected>,
}

/// Reads a corpus; `#` starts a comment line. Malformed expectations are reported by line.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRow>, String> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (sentence, expected) = match line.split_once("=>") {
            None => (line, None),
            Some((s, e)) => {
                let e = e.trim();
                let expected = match e {
                    "1" | "true" => Expected::Truth(true),
                    "0" | "false" => Expected::Truth(false),
                    _ => match e.strip_prefix("grade").map(|g| g.trim().parse::<usize>()) {
                        Some(Ok(g)) => Expected::Grade(g),
                        _ => return Err(format!("line {}: cannot read expectation `{e}`", i + 1)),
                    },
                };
                (s.trim(), Some(expected))
            }
        };
        rows.push(CorpusRow { line: i + 1, sentence: sentence.to_string(), expected });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct RowResult {
    pub row: CorpusRow,
    pub outcome: Result<Outcome, String>,
}

impl RowResult {
    /// Whether the outcome meets the expectation; rows without one pass if they derive.
    pub fn passed(&self) -> bool {
        match (&self.outcome, self.row.expected) {
            (Err(_), _) => false,
            (Ok(_), None) => true,
            (Ok(o), Some(Expected::Truth(t))) => o.truth == Some(t) && o.grade == Some(0),
            (Ok(o), Some(Expected::Grade(g))) => o.grade == Some(g),
        }
    }

    pub fn render(&self) -> String {
        let status = if self.passed() { "ok" } else { "MISMATCH" };
        match &self.outcome {
            Err(e) => format!("{} | error: {e} | {status}", self.row.sentence),
            Ok(o) => {
                let scalar = o.scalar.map_or("-".to_string(), |v| format!("{v:.6}"));
                let truth = o.truth.map_or("-".to_string(), |t| u8::from(t).to_string());
                let grade = o.grade.map_or("-".to_string(), |g| g.to_string());
                format!("{} | {scalar} | {truth} | grade {grade} | {status}", self.row.sentence)
            }
        }
    }
}

pub fn evaluate_corpus(rows: &[CorpusRow], lexicon: &Lexicon, model: &TarskianModel) -> Vec<RowResult> {
    rows.iter()
        .map(|row| {
            let outcome = parse(&row.sentence, lexicon)
                .map_err(|e| e.to_string())
                .and_then(|ast| derive(&ast, lexicon, Some(model)).map_err(|e| e.to_string()));
            RowResult { row: row.clone(), outcome }
        })
        .collect()
}
