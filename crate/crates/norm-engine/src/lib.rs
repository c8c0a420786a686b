//! Transition-system semantics for norm models.
//!
//! [`apply`] executes one ground act, [`run`] folds a trace, [`explore`]
//! builds the bounded reachable state graph, and [`detect_conflicts`] finds
//! stuck duties in it. All operations are pure functions of their inputs;
//! exploration may expand frontier states in parallel (the default
//! `parallel` feature) without changing any observable output.

mod apply;
mod conflict;
mod event;
mod explore;
mod run;

pub use apply::{apply, enabled, ApplyError};
pub use conflict::{detect_conflicts, ConflictReason, ConflictReport};
pub use event::{Event, EventKind};
pub use explore::{
    explore, explore_sequential, Edge, ExploreConfig, ExploreError, StateGraph, DEFAULT_NODE_CAP,
};
pub use run::{run, RunOutcome, RunResult};
