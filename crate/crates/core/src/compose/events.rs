use fga_kernel::Multivector64;

use crate::error::{Error, Result};
use crate::lexicon::LexicalEntry;
use crate::space::{SemanticSpace, Subspace, EPS_NUM, EPS_ZERO};

/// A superposition of role-filler bindings `Σ r_i ∧ f_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EventStructure {
    pub value: Multivector64,
    /// (role label, filler name), for traces.
    pub bindings: Vec<(String, String)>,
}

fn check_support(space: &SemanticSpace, what: &str, m: &Multivector64, s: Subspace) -> Result<()> {
    let support = space.support(m);
    if support.len() != 1 || !support.contains(&s) || m.homogeneous_grade(EPS_ZERO) != Some(1) {
        return Err(Error::SupportViolation {
            name: what.to_string(),
            found: support.into_iter().collect(),
            allowed: vec![s],
        });
    }
    Ok(())
}

/// `r ∧ f` for a role vector in `V_R` and a filler in `V_E`.
pub fn bind(space: &SemanticSpace, role: &Multivector64, filler: &Multivector64) -> Result<Multivector64> {
    check_support(space, "role", role, Subspace::Role)?;
    check_support(space, "filler", filler, Subspace::Entity)?;
    Ok(role.wedge(filler)?)
}

/// Sums bindings of registered roles to entity entries.
pub fn build_event(space: &SemanticSpace, bindings: &[(&str, &LexicalEntry)]) -> Result<EventStructure> {
    let mut value = Multivector64::zero(space.algebra());
    let mut labels = Vec::new();
    for (role, filler) in bindings {
        value += &bind(space, &space.role_key(role)?, &filler.value)?;
        labels.push((role.to_string(), filler.name.clone()));
    }
    Ok(EventStructure { value, bindings: labels })
}

/// `role⁻¹ ⌟ <E>_2`. An unused role yields zero.
pub fn query_filler(event: &EventStructure, role: &Multivector64) -> Result<Multivector64> {
    Ok(role.inverse()?.lc(&event.value.grade(2))?)
}

/// `<E>_2 ⌞ filler⁻¹`: the role combination bound to the filler.
pub fn query_role(event: &EventStructure, filler: &Multivector64) -> Result<Multivector64> {
    Ok(event.value.grade(2).rc(&filler.inverse()?)?)
}

/// Successive left contractions by each probe's inverse.
pub fn grade_descent(m: &Multivector64, probes: &[Multivector64]) -> Result<Multivector64> {
    let grade = m.grades(EPS_NUM * m.max_abs().max(1.0)).last().copied().unwrap_or(0);
    if probes.len() > grade {
        return Err(Error::GradeUnderflow { grade, probes: probes.len() });
    }
    let mut acc = m.clone();
    for p in probes {
        acc = p.inverse()?.lc(&acc)?;
    }
    Ok(acc)
}

/// The template blade `r_1 ∧ ... ∧ r_k` for registered role labels.
pub fn role_template(space: &SemanticSpace, labels: &[&str]) -> Result<Multivector64> {
    let mut t = Multivector64::one(space.algebra());
    for l in labels {
        t = t.wedge(&space.role_key(l)?)?;
    }
    Ok(t)
}

/// Expands a role template blade into bindings, one argument per factor.
/// The factors are read in registration order of the roles.
pub fn apply_role_template(
    space: &SemanticSpace,
    template: &Multivector64,
    args: &[&LexicalEntry],
) -> Result<EventStructure> {
    let terms: Vec<_> = template.terms().filter(|(_, c)| c.abs() > EPS_ZERO).collect();
    let not_factorizable = || Error::SupportViolation {
        name: "template".into(),
        found: space.support(template).into_iter().collect(),
        allowed: vec![Subspace::Role],
    };
    let [(blade, coeff)] = terms.as_slice() else {
        return Err(not_factorizable());
    };
    if (**coeff - 1.0).abs() > EPS_NUM {
        return Err(not_factorizable());
    }
    let mut labels = Vec::new();
    for g in blade.indices() {
        let label = space.roles().iter().find(|l| space.role_generator(l) == Some(g)).ok_or_else(not_factorizable)?;
        labels.push(label.clone());
    }
    if labels.len() != args.len() {
        return Err(Error::ArityMismatch { expected: labels.len(), got: args.len() });
    }
    let pairs: Vec<(&str, &LexicalEntry)> = labels.iter().map(String::as_str).zip(args.iter().copied()).collect();
    build_event(space, &pairs)
}
