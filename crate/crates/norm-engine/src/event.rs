//! Events describe exactly what an act changed.

use std::fmt;

use norm_core::{DutyId, GroundAct, GroundAtom};

/// One effect of applying an act, in emission order: the act itself, fact
/// changes, then duty transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    ActPerformed(GroundAct),
    FactCreated(GroundAtom),
    FactTerminated(GroundAtom),
    DutyCreated(DutyId),
    DutyTerminated(DutyId),
    DutyEnforced(DutyId),
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::ActPerformed(_) => "act-performed",
            EventKind::FactCreated(_) => "fact-created",
            EventKind::FactTerminated(_) => "fact-terminated",
            EventKind::DutyCreated(_) => "duty-created",
            EventKind::DutyTerminated(_) => "duty-terminated",
            EventKind::DutyEnforced(_) => "duty-enforced",
        }
    }

    /// The ground atom, duty instance or act the event is about.
    pub fn subject(&self) -> String {
        match self {
            EventKind::ActPerformed(act) => act.to_string(),
            EventKind::FactCreated(atom) | EventKind::FactTerminated(atom) => atom.to_string(),
            EventKind::DutyCreated(duty)
            | EventKind::DutyTerminated(duty)
            | EventKind::DutyEnforced(duty) => duty.to_string(),
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.subject())
    }
}

/// An [`EventKind`] attributed to the trace step that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    /// 0-based index into the trace.
    pub step: usize,
    pub kind: EventKind,
}
