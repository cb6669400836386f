//! Parser, derivation driver and corpus evaluation for the fragment.

pub mod corpus;
pub mod derive;
pub mod dims;
pub mod parse;

pub use corpus::{evaluate_corpus, parse_corpus, CorpusRow, Expected, RowResult};
pub use derive::{derive, first_type_error, force_transitive, Outcome};
pub use dims::{dims_table, DimsTable};
pub use parse::{parse, ParseError, SentenceAst};
