use fga_kernel::{Multivector64, Rotor64};

use crate::error::{Error, Result};
use crate::lexicon::{LexicalEntry, ModifierMode, QualeRotor};
use crate::space::{SemanticSpace, Subspace, EPS_ZERO};
use crate::types::{Quale, RecordType, SemanticKind};

/// `R_lift = (1 - e_E e_P)/√2`, the quarter turn from the entity axis to the predicate axis.
pub fn lift_rotor(space: &SemanticSpace) -> Result<Rotor64> {
    let (ge, gp) = space.lift_axes().ok_or(Error::AxesUnconfigured)?;
    let alg = space.algebra();
    let ee = Multivector64::basis_vector(alg, ge)?;
    let ep = Multivector64::basis_vector(alg, gp)?;
    let value = (Multivector64::one(alg) - ee.gp(&ep)?).scale(std::f64::consts::FRAC_1_SQRT_2);
    Ok(Rotor64::from_multivector(value)?)
}

/// `↑a = R_lift a R̃_lift`.
pub fn type_raise(space: &SemanticSpace, a: &LexicalEntry) -> Result<Multivector64> {
    if a.kind != SemanticKind::Entity {
        return Err(Error::KindMismatch { name: a.name.clone(), expected: "an entity".into() });
    }
    Ok(lift_rotor(space)?.apply(&a.value)?)
}

/// The stages of a qualia coercion.
#[derive(Debug, Clone, PartialEq)]
pub struct Coercion {
    pub quale: Quale,
    /// Quale component selected by grade projection.
    pub selected: Multivector64,
    /// After the quale rotor; same grade and norm as `selected`.
    pub rotated: Multivector64,
    /// Grade-1 `V_P` predicate left after saturating the frame legs.
    pub predicate: Multivector64,
    pub rotor: QualeRotor,
    /// `RT|_quale`, when the entry has a record type.
    pub record: Option<RecordType>,
}

/// Selects the quale component of `x` at its designated grade. TELIC and AGENTIVE
/// frames are told apart by their role leg when the matching role is registered.
pub fn select_quale(space: &SemanticSpace, x: &LexicalEntry, quale: Quale) -> Result<Multivector64> {
    let g = quale.grade();
    let role_gen = quale.role_label().and_then(|l| space.role_generator(l));
    let layout = space.layout();
    let selected = x.value.grade(g).filter_blades(|b| match quale {
        Quale::Formal | Quale::Const => b.indices().all(|i| layout.subspace_of(i) == Some(Subspace::Predicate)),
        _ => role_gen.is_none_or(|r| b.contains(r)),
    });
    if selected.is_zero_within(EPS_ZERO) {
        return Err(Error::EmptyGradeComponent { entry: x.name.clone(), quale: quale.to_string(), grade: g });
    }
    Ok(selected)
}

/// Saturates every leg of each blade except its highest predicate generator, contracting
/// role legs first, then entity legs, then the remaining predicate legs.
pub fn saturate_to_predicate(space: &SemanticSpace, m: &Multivector64) -> Result<Multivector64> {
    let alg = space.algebra();
    let layout = space.layout();
    let rank = |g: usize| match layout.subspace_of(g) {
        Some(Subspace::Role) => 0,
        Some(Subspace::Entity) => 1,
        _ => 2,
    };
    let mut out = Multivector64::zero(alg);
    for (b, c) in m.terms() {
        let Some(keep) = b.indices().filter(|&g| layout.subspace_of(g) == Some(Subspace::Predicate)).max() else {
            continue;
        };
        let mut probes: Vec<usize> = b.indices().filter(|&g| g != keep).collect();
        probes.sort_by_key(|&g| (rank(g), g));
        let mut acc = Multivector64::blade(alg, b, *c)?;
        for g in probes {
            acc = Multivector64::basis_vector(alg, g)?.inverse()?.lc(&acc)?;
        }
        out += &acc;
    }
    Ok(out)
}

/// Coerces an entry to a `V_P` predicate through one of its qualia.
pub fn coerce(space: &SemanticSpace, x: &LexicalEntry, quale: Quale) -> Result<Coercion> {
    let missing = || Error::MissingQuale { entry: x.name.clone(), quale: quale.to_string() };
    let rotor = x.qualia.get(&quale).ok_or_else(missing)?.clone();
    let record = match &x.record_type {
        Some(rt) => Some(rt.project(quale).map_err(|_| missing())?),
        None => None,
    };
    let selected = select_quale(space, x, quale)?;
    let rotated = rotor.rotor()?.apply(&selected)?;
    let predicate = saturate_to_predicate(space, &rotated)?;
    if predicate.is_zero_within(EPS_ZERO) {
        return Err(Error::EmptyGradeComponent { entry: x.name.clone(), quale: quale.to_string(), grade: 1 });
    }
    Ok(Coercion { quale, selected, rotated, predicate, rotor, record })
}

/// `exp(-φ/2 B^)` applied to an artifact bivector. Positive `φ` is the evaluative
/// direction, negative the privative one.
pub fn artifact_rotation(noun: &Multivector64, plane: &Multivector64, phi: f64) -> Result<Multivector64> {
    Ok(Rotor64::exp(plane, phi)?.apply(noun)?)
}

fn is_hyperbolic(space: &SemanticSpace, qr: &QualeRotor) -> bool {
    let sig = space.algebra().signature();
    sig.square(qr.generators.0) * sig.square(qr.generators.1) == -1
}

/// Result of adjectival modification.
#[derive(Debug, Clone, PartialEq)]
pub struct Modification {
    pub mode: ModifierMode,
    pub value: Multivector64,
    pub rotor: Rotor64,
    pub description: String,
}

/// Adjective-noun modification.
///
/// * `Subsective`: the noun's TELIC rotor applied to the adjective. For artifact
///   nouns whose TELIC plane is hyperbolic, the evaluative boost of the noun with `φ > 0`.
/// * `Privative`: hyperbolic sandwich of the artifact bivector with `φ < 0`.
/// * `Intersective`: elliptic rotation in the adjective's property plane, applied to the noun.
pub fn modify(space: &SemanticSpace, adj: &LexicalEntry, noun: &LexicalEntry, mode: ModifierMode) -> Result<Modification> {
    let missing_telic = || Error::MissingQuale { entry: noun.name.clone(), quale: Quale::Telic.to_string() };
    let adj_angle = adj.modifier.as_ref().and_then(|m| m.angle);
    match mode {
        ModifierMode::Subsective => {
            let tel = noun.qualia.get(&Quale::Telic).ok_or_else(missing_telic)?;
            if noun.kind == SemanticKind::Artifact && is_hyperbolic(space, tel) {
                let phi = adj_angle.unwrap_or(tel.angle).abs();
                let rotor = Rotor64::exp(&tel.plane, phi)?;
                let value = rotor.apply(&noun.value)?;
                let description = format!("evaluative boost of {} in its TELIC plane, φ = {phi}", noun.name);
                return Ok(Modification { mode, value, rotor, description });
            }
            let rotor = tel.rotor()?;
            let value = rotor.apply(&adj.value)?;
            let description = format!("{}'s TELIC rotor applied to {}, angle {}", noun.name, adj.name, tel.angle);
            Ok(Modification { mode, value, rotor, description })
        }
        ModifierMode::Privative => {
            let tel = noun.qualia.get(&Quale::Telic).ok_or_else(missing_telic)?;
            if !is_hyperbolic(space, tel) {
                return Err(Error::SignatureMismatch);
            }
            let phi = -adj_angle.unwrap_or(tel.angle).abs();
            let rotor = Rotor64::exp(&tel.plane, phi)?;
            let value = rotor.apply(&noun.value)?;
            let description = format!("privative boost of {} in its TELIC plane, φ = {phi}", noun.name);
            Ok(Modification { mode, value, rotor, description })
        }
        ModifierMode::Intersective => {
            let m = adj.modifier.as_ref().ok_or_else(|| Error::MissingQuale {
                entry: adj.name.clone(),
                quale: "property-plane".into(),
            })?;
            let plane = m.plane.as_ref().ok_or_else(|| Error::MissingQuale {
                entry: adj.name.clone(),
                quale: "property-plane".into(),
            })?;
            let in_vp = space.support(plane).iter().all(|s| *s == Subspace::Predicate);
            let square = plane.gp(plane)?.scalar_part();
            if !in_vp || square >= 0.0 {
                return Err(Error::SignatureMismatch);
            }
            let angle = m.angle.unwrap_or(std::f64::consts::FRAC_PI_4);
            let rotor = Rotor64::exp(plane, angle)?;
            let value = rotor.apply(&noun.value)?;
            let description = format!("{} rotates the property plane of {}, angle {angle}", adj.name, noun.name);
            Ok(Modification { mode, value, rotor, description })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeModifier {
    Very,
    Slightly,
}

/// `α R_v P R̃_v`; the rotor is the identity unless the entry declares a prototype
/// rotation and the modifier is `Very`.
pub fn degree_modify(p: &LexicalEntry, modifier: DegreeModifier) -> Result<Multivector64> {
    let params = match (&p.degree_params, p.kind) {
        (Some(d), SemanticKind::GradablePred) => d,
        _ => return Err(Error::NotGradable(p.name.clone())),
    };
    let (alpha, rotated) = match modifier {
        DegreeModifier::Very => {
            let v = match &params.prototype {
                Some((plane, angle)) => Rotor64::exp(plane, *angle)?.apply(&p.value)?,
                None => p.value.clone(),
            };
            (params.very, v)
        }
        DegreeModifier::Slightly => (params.slightly, p.value.clone()),
    };
    Ok(rotated.scale(alpha))
}
