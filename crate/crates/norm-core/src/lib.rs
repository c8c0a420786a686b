//! Core types of the norm frame language: object domains, fact symbols,
//! act and duty frames, formulas, grounding and evaluation.
//!
//! Everything here is immutable after construction and free of interior
//! mutability, so values can be shared across threads freely.

mod check;
mod eval;
mod formula;
mod ground;
mod model;

#[cfg(feature = "random")]
pub mod random;

pub use check::{check_wellformed, duty_param_source, is_wellformed, ModelDiagnostic, Severity};
pub use eval::{eval, ground_atom, substitute, substitute_atom, EvalError};
pub use formula::{Atom, Formula, Term};
pub use ground::{ground_model, GroundModel};
pub use model::{
    canonical_param_names, ActFrame, DutyFrame, DutyId, DutyStatus, FactKind, FactSymbol,
    GroundAct, GroundAtom, Model, ObjectDomain, Param, State,
};
