//! Contraction-based application, event structure and the rotor layer.

mod apply;
mod derivation;
mod events;
mod predicates;
mod quantify;
mod rotors;

pub use apply::{apply_binary, apply_unary, inner_apply, InnerApplication, ANOMALY_RATIO};
pub use derivation::{Derivation, Step, TruthCondition, Verdict};
pub use events::{
    apply_role_template, bind, build_event, grade_descent, query_filler, query_role, role_template, EventStructure,
};
pub use predicates::{compare, compare_along, conjoin, negate, ConjunctionMode};
pub use quantify::{quantify, Quantifier};
pub use rotors::{
    artifact_rotation, coerce, degree_modify, lift_rotor, modify, saturate_to_predicate, select_quale, type_raise,
    Coercion, DegreeModifier, Modification,
};
