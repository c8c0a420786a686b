//! Folding a trace of ground acts over a state.

use norm_core::{GroundAct, GroundModel, State};

use crate::apply::{apply, ApplyError};
use crate::event::{Event, EventKind};

#[derive(Debug, Clone, PartialEq)]
pub enum RunOutcome {
    Completed,
    /// The trace stopped at `step` (0-based); the states up to and including
    /// the pre-state of the failing act are kept.
    FailedAt { step: usize, error: ApplyError },
}

impl RunOutcome {
    pub fn is_completed(&self) -> bool {
        matches!(self, RunOutcome::Completed)
    }
}

/// The result of running a trace: every intermediate state (state 0 is the
/// initial one), the flat event list, and how the run ended.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub states: Vec<State>,
    pub events: Vec<Event>,
    pub outcome: RunOutcome,
}

impl RunResult {
    pub fn final_state(&self) -> &State {
        self.states.last().expect("states is never empty")
    }

    pub fn events_at(&self, step: usize) -> impl Iterator<Item = &EventKind> {
        self.events.iter().filter(move |e| e.step == step).map(|e| &e.kind)
    }
}

/// Applies the trace in order, stopping at the first failure. Deterministic:
/// the same inputs produce the same result.
pub fn run(gm: &GroundModel, initial: &State, trace: &[GroundAct]) -> RunResult {
    let mut states = vec![initial.clone()];
    let mut events = Vec::new();

    for (step, act) in trace.iter().enumerate() {
        match apply(gm, states.last().unwrap(), act) {
            Ok((next, kinds)) => {
                states.push(next);
                events.extend(kinds.into_iter().map(|kind| Event { step, kind }));
            }
            Err(error) => {
                return RunResult {
                    states,
                    events,
                    outcome: RunOutcome::FailedAt { step, error },
                }
            }
        }
    }

    RunResult { states, events, outcome: RunOutcome::Completed }
}
