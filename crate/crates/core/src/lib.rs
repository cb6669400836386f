//! Typed meaning spaces, composition, model-theoretic evaluation and an HRR baseline.

pub mod compose;
pub mod error;
pub mod lexicon;
pub mod model;
pub mod space;
pub mod types;
pub mod typecheck;
pub mod vsa;

pub use error::{Error, Result};
pub use lexicon::{
    blade_typicality, mk_entity, mk_gradable, mk_hyponym, mk_polar_pair, mk_relation, mk_role_keys, mk_unary,
    DegreeParams, LexicalEntry, Lexicon, LexiconError, Modifier, ModifierMode, Polar, QualeRotor,
};
pub use space::{SemanticSpace, Subspace, SubspaceLayout, SubspaceRange};
pub use types::{project_quale_field, record_subtype, Quale, RecordType, SemanticKind, SemanticType};
pub use typecheck::{check_type, check_values, CompositionOp, IllTyped, TypeVerdict};
pub use vsa::{crosstalk_experiment, hrr_bind, hrr_unbind, CrosstalkRow, HrrVector};
pub use model::{Entailment, Extension, ExtensionSource, Soundness, TarskianModel, TruthRule, DEFAULT_TAU};
