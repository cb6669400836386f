use fga_kernel::{Multivector64, Rotor64};

use crate::error::{Error, Result};
use crate::lexicon::LexicalEntry;
use crate::types::{Quale, SemanticKind};

/// Results below this fraction of the operand norms are flagged as selectional anomalies.
pub const ANOMALY_RATIO: f64 = 0.05;

fn expect_kind(e: &LexicalEntry, ok: bool, expected: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::KindMismatch { name: e.name.clone(), expected: expected.to_string() })
    }
}

/// `<P x>_0`: truth degree of a predicate applied to an entity.
pub fn apply_unary(p: &LexicalEntry, x: &LexicalEntry) -> Result<f64> {
    expect_kind(p, p.kind.is_predicate(), "a unary, gradable or polar predicate")?;
    expect_kind(x, x.kind == SemanticKind::Entity, "an entity")?;
    Ok(p.value.scalar_product(&x.value)?)
}

/// Object-first curried application: `partial = R ⌞ obj`, `full = subj ⌟ partial`.
pub fn apply_binary(rel: &LexicalEntry, subj: &LexicalEntry, obj: &LexicalEntry) -> Result<(Multivector64, f64)> {
    expect_kind(rel, rel.kind == SemanticKind::BinaryRel, "a binary relation")?;
    expect_kind(subj, subj.kind == SemanticKind::Entity, "an entity")?;
    expect_kind(obj, obj.kind == SemanticKind::Entity, "an entity")?;
    let partial = rel.value.rc(&obj.value)?;
    let full = subj.value.lc(&partial)?.scalar_part();
    Ok((partial, full))
}

/// Outcome of inner application.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerApplication {
    /// The argument after the quale rotor.
    pub rotated: Multivector64,
    /// `P ⌟ arg'` for a grade-1 predicate, `P ⌞ arg'` for a relation.
    pub result: Multivector64,
    pub rotor: Option<Rotor64>,
    pub anomalous: bool,
}

/// Composes `P` with the argument after rotating it by the argument's rotor for `quale`.
/// With `quale = None` this is plain outer application.
pub fn inner_apply(p: &LexicalEntry, arg: &LexicalEntry, quale: Option<Quale>) -> Result<InnerApplication> {
    let rotor = match quale {
        None => None,
        Some(q) => {
            let qr = arg
                .qualia
                .get(&q)
                .ok_or_else(|| Error::MissingQuale { entry: arg.name.clone(), quale: q.to_string() })?;
            Some(qr.rotor()?)
        }
    };
    let rotated = match &rotor {
        Some(r) => r.apply(&arg.value)?,
        None => arg.value.clone(),
    };
    let result = if p.kind == SemanticKind::BinaryRel { p.value.rc(&rotated)? } else { p.value.lc(&rotated)? };
    let scale = p.value.coefficient_norm() * arg.value.coefficient_norm();
    let anomalous = result.coefficient_norm() < ANOMALY_RATIO * scale;
    Ok(InnerApplication { rotated, result, rotor, anomalous })
}
