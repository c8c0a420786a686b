//! Standard Deontic Logic as propositional KD: formulas, a tableau decision
//! procedure with countermodel extraction, an independent bounded-model
//! enumeration oracle, and the scope encodings of the library lending rules.

mod chisholm;
mod enumerate;
mod formula;
mod kripke;
mod normalize;
mod parse;
mod tableau;

#[cfg(feature = "random")]
pub mod random;

pub use chisholm::{chisholm_encodings, chisholm_report, ChisholmEncoding, ChisholmReportRow, Scope};
pub use enumerate::{enumerate_models, exists_model, EnumerateError, VALUATION_BIT_GUARD};
pub use formula::{set_atoms, set_modal_depth, SdlFormula};
pub use kripke::{check_model, KripkeModel};
pub use normalize::{is_normal, normalize};
pub use parse::{sdl_parse, sdl_parse_set, SdlDiagnostic};
pub use tableau::{
    consistent, entails, Certificate, ClosedBranch, TableauConfig, TableauError, TableauResult,
    DEFAULT_NODE_BUDGET,
};
