//! Textual formats for norm models and traces.
//!
//! [`parse_model`] and [`parse_trace`] turn text into `norm-core` values with
//! positioned diagnostics; [`serialize_model`] renders the canonical text,
//! which reparses to a structurally equal model.

use std::fmt;

use norm_core::GroundAct;

mod lexer;
mod parser;
mod serialize;

pub use parser::{parse_model, parse_trace};
pub use serialize::serialize_model;

/// A positioned parse finding. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: norm_core::Severity,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, line: usize, column: usize) -> Self {
        Diagnostic { severity: norm_core::Severity::Error, message: message.into(), line, column }
    }

    pub fn warning(message: impl Into<String>, line: usize, column: usize) -> Self {
        Diagnostic { severity: norm_core::Severity::Warning, message: message.into(), line, column }
    }

    pub fn is_error(&self) -> bool {
        self.severity == norm_core::Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.severity, self.message)
    }
}

/// A resolved sequence of ground acts to execute in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub acts: Vec<GroundAct>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acts.is_empty()
    }
}
