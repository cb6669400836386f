use std::collections::BTreeSet;
use std::fmt::{self, Write};

use fga_kernel::Multivector64;

use crate::space::{fmt_support, SemanticSpace, Subspace, EPS_ZERO};
use crate::typecheck::IllTyped;

/// Verdict recorded for one derivation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    WellTyped,
    IllTyped(IllTyped),
    /// Graded failure: the result is almost zero but no type error is raised.
    Anomaly(String),
    /// Computed over model extensions rather than algebraically.
    Denotational,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::WellTyped => write!(f, "well-typed"),
            Verdict::IllTyped(r) => write!(f, "ill-typed: {r}"),
            Verdict::Anomaly(r) => write!(f, "anomaly: {r}"),
            Verdict::Denotational => write!(f, "denotational"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub op: String,
    pub operands: Vec<String>,
    pub grade: Option<usize>,
    pub support: BTreeSet<Subspace>,
    pub verdict: Verdict,
    /// Extra lines shown under the step (rotor parameters, record projections).
    pub notes: Vec<String>,
}

/// How the final scalar becomes a truth value.
#[derive(Debug, Clone, PartialEq)]
pub enum TruthCondition {
    /// Compare with a threshold; `None` means the model's `τ`.
    Threshold(Option<f64>),
    /// True iff the value is strictly positive (polar predicates, comparatives).
    Positive,
    /// The value is already 0 or 1.
    Boolean,
    /// Conjunction of independently evaluated sub-results.
    All(Vec<(f64, TruthCondition)>),
}

/// An ordered trace of composition steps and the final value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Derivation {
    pub steps: Vec<Step>,
    pub result: Option<Multivector64>,
    pub condition: Option<TruthCondition>,
    /// Free-form remarks such as the reading chosen for a quantified sentence.
    pub remarks: Vec<String>,
}

impl Derivation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a step with grade and support read off `value`.
    pub fn record(
        &mut self,
        space: &SemanticSpace,
        op: &str,
        operands: &[&str],
        value: &Multivector64,
        verdict: Verdict,
    ) -> &mut Step {
        let tol = EPS_ZERO * value.max_abs().max(1.0);
        let grade = value.grades(tol).last().copied().or(Some(0));
        self.steps.push(Step {
            op: op.to_string(),
            operands: operands.iter().map(|s| s.to_string()).collect(),
            grade,
            support: space.support(value),
            verdict,
            notes: Vec::new(),
        });
        self.steps.last_mut().unwrap()
    }

    /// Records a step whose grade and support are given symbolically.
    pub fn record_symbolic(
        &mut self,
        op: &str,
        operands: &[&str],
        grade: usize,
        support: BTreeSet<Subspace>,
        verdict: Verdict,
    ) -> &mut Step {
        self.steps.push(Step {
            op: op.to_string(),
            operands: operands.iter().map(|s| s.to_string()).collect(),
            grade: Some(grade),
            support,
            verdict,
            notes: Vec::new(),
        });
        self.steps.last_mut().unwrap()
    }

    /// Appends another derivation's steps, renumbering nothing (numbers are positional).
    pub fn extend(&mut self, other: Derivation) {
        self.steps.extend(other.steps);
        self.remarks.extend(other.remarks);
    }

    pub fn scalar(&self) -> Option<f64> {
        self.result.as_ref().map(|m| m.scalar_part())
    }

    pub fn final_grade(&self) -> Option<usize> {
        self.steps.last().and_then(|s| s.grade)
    }

    pub fn is_well_typed(&self) -> bool {
        self.steps.iter().all(|s| !matches!(s.verdict, Verdict::IllTyped(_)))
    }

    pub fn has_step(&self, op_prefix: &str) -> bool {
        self.steps.iter().any(|s| s.op.starts_with(op_prefix))
    }

    /// One line per step.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let grade = s.grade.map_or("-".to_string(), |g| g.to_string());
            let _ = writeln!(
                out,
                "step {}: {} ({}) -> grade {}, support {}, [{}]",
                i + 1,
                s.op,
                s.operands.join(", "),
                grade,
                fmt_support(&s.support),
                s.verdict
            );
            for n in &s.notes {
                let _ = writeln!(out, "    {n}");
            }
        }
        for r in &self.remarks {
            let _ = writeln!(out, "note: {r}");
        }
        out
    }
}
