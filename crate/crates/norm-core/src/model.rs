//! Declarations of the frame language and the runtime state they act on.
//!
//! A [`Model`] collects object domains, fact symbols (atomic or derived), act
//! frames, duty frames and the initial facts. All values are immutable after
//! construction; the engine only ever produces fresh [`State`]s.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::formula::{write_call, Formula};

/// A finite domain of object constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectDomain {
    pub name: String,
    pub members: Vec<String>,
}

impl ObjectDomain {
    pub fn new(name: impl Into<String>, members: Vec<String>) -> Self {
        ObjectDomain { name: name.into(), members }
    }

    pub fn contains(&self, constant: &str) -> bool {
        self.members.iter().any(|m| m == constant)
    }
}

/// Whether a fact symbol is assigned by acts or defined by a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactKind {
    Atomic,
    /// The fact frame body. Its variables are the canonical parameter names
    /// (see [`FactSymbol::canonical_params`]).
    Derived(Formula),
}

/// A fact symbol with its parameter domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactSymbol {
    pub name: String,
    pub params: Vec<String>,
    pub kind: FactKind,
    pub sources: Vec<String>,
}

impl FactSymbol {
    pub fn atomic(name: impl Into<String>, params: Vec<String>) -> Self {
        FactSymbol { name: name.into(), params, kind: FactKind::Atomic, sources: Vec::new() }
    }

    pub fn derived(name: impl Into<String>, params: Vec<String>, body: Formula) -> Self {
        FactSymbol { name: name.into(), params, kind: FactKind::Derived(body), sources: Vec::new() }
    }

    pub fn is_derived(&self) -> bool {
        matches!(self.kind, FactKind::Derived(_))
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// Canonical variable names for the parameter positions.
    ///
    /// The declaration syntax lists only domains, so a derived fact's body
    /// refers to its parameters through these names: the lowercased domain
    /// name, suffixed with a 1-based ordinal when the same lowercased name
    /// occurs more than once. `(Agent, Item)` yields `agent, item`;
    /// `(Agent, Agent)` yields `agent1, agent2`.
    pub fn canonical_params(&self) -> Vec<String> {
        canonical_param_names(&self.params)
    }
}

pub fn canonical_param_names(domains: &[String]) -> Vec<String> {
    let lowered: Vec<String> = domains.iter().map(|d| d.to_lowercase()).collect();
    lowered
        .iter()
        .enumerate()
        .map(|(i, low)| {
            if lowered.iter().filter(|l| *l == low).count() > 1 {
                let ordinal = lowered[..=i].iter().filter(|l| *l == low).count();
                format!("{low}{ordinal}")
            } else {
                low.clone()
            }
        })
        .collect()
}

/// A named, typed frame parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub domain: String,
}

impl Param {
    pub fn new(name: impl Into<String>, domain: impl Into<String>) -> Self {
        Param { name: name.into(), domain: domain.into() }
    }
}

/// An act frame: what an actor can do, under which precondition, and which
/// atomic facts the act creates or terminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActFrame {
    pub name: String,
    /// The distinguished first parameter. Its name is always `actor`.
    pub actor: Param,
    pub object_params: Vec<Param>,
    pub precondition: Formula,
    pub creates: Vec<crate::formula::Atom>,
    pub terminates: Vec<crate::formula::Atom>,
    pub sources: Vec<String>,
}

impl ActFrame {
    /// Actor followed by the object parameters.
    pub fn params(&self) -> impl Iterator<Item = &Param> {
        std::iter::once(&self.actor).chain(self.object_params.iter())
    }

    pub fn arity(&self) -> usize {
        1 + self.object_params.len()
    }

    pub fn param(&self, name: &str) -> Option<&Param> {
        self.params().find(|p| p.name == name)
    }
}

/// A duty frame: the acts that create, enforce and terminate a duty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DutyFrame {
    pub name: String,
    /// The distinguished first parameter. Its name is always `holder`.
    pub holder: Param,
    pub object_params: Vec<Param>,
    pub created_by: Vec<String>,
    pub enforced_by: Vec<String>,
    pub terminated_by: Vec<String>,
    pub sources: Vec<String>,
}

impl DutyFrame {
    pub fn params(&self) -> impl Iterator<Item = &Param> {
        std::iter::once(&self.holder).chain(self.object_params.iter())
    }

    pub fn arity(&self) -> usize {
        1 + self.object_params.len()
    }

    /// Act names in any of the three roles, deduplicated, in role order.
    pub fn referenced_acts(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for name in self
            .created_by
            .iter()
            .chain(self.enforced_by.iter())
            .chain(self.terminated_by.iter())
        {
            if !out.contains(&name.as_str()) {
                out.push(name);
            }
        }
        out
    }
}

/// A complete model: the set of declarations plus the initial facts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    pub domains: Vec<ObjectDomain>,
    pub facts: Vec<FactSymbol>,
    pub acts: Vec<ActFrame>,
    pub duties: Vec<DutyFrame>,
    pub initial: Vec<GroundAtom>,
}

impl Model {
    pub fn domain(&self, name: &str) -> Option<&ObjectDomain> {
        self.domains.iter().find(|d| d.name == name)
    }

    pub fn fact(&self, name: &str) -> Option<&FactSymbol> {
        self.facts.iter().find(|f| f.name == name)
    }

    pub fn act(&self, name: &str) -> Option<&ActFrame> {
        self.acts.iter().find(|a| a.name == name)
    }

    pub fn duty(&self, name: &str) -> Option<&DutyFrame> {
        self.duties.iter().find(|d| d.name == name)
    }

    pub fn declaration_count(&self) -> usize {
        self.domains.len() + self.facts.len() + self.acts.len() + self.duties.len()
    }

    /// The state before any act: the declared initial facts and no duties.
    pub fn initial_state(&self) -> State {
        State {
            facts: self.initial.iter().cloned().collect(),
            duties: BTreeMap::new(),
        }
    }
}

/// A fully instantiated atomic fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub symbol: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(symbol: impl Into<String>, args: Vec<String>) -> Self {
        GroundAtom { symbol: symbol.into(), args }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_call(f, &self.symbol, &self.args)
    }
}

/// An act frame applied to constants, one per parameter in frame order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAct {
    pub frame: String,
    pub args: Vec<String>,
}

impl GroundAct {
    pub fn new(frame: impl Into<String>, args: Vec<String>) -> Self {
        GroundAct { frame: frame.into(), args }
    }
}

impl fmt::Display for GroundAct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_call(f, &self.frame, &self.args)
    }
}

/// The identity of a duty instance: frame plus constants in parameter order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DutyId {
    pub frame: String,
    pub args: Vec<String>,
}

impl DutyId {
    pub fn new(frame: impl Into<String>, args: Vec<String>) -> Self {
        DutyId { frame: frame.into(), args }
    }
}

impl fmt::Display for DutyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_call(f, &self.frame, &self.args)
    }
}

/// Lifecycle status of a duty instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DutyStatus {
    Active,
    Terminated,
    Enforced,
}

impl fmt::Display for DutyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DutyStatus::Active => "active",
            DutyStatus::Terminated => "terminated",
            DutyStatus::Enforced => "enforced",
        })
    }
}

/// A snapshot of the world: the true atomic facts and the duty instances.
///
/// Facts are a set of positive ground atoms, so a state cannot contain a
/// contradiction. At most one duty instance exists per identity; its status
/// is overwritten in place when the lifecycle moves on.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub facts: BTreeSet<GroundAtom>,
    pub duties: BTreeMap<DutyId, DutyStatus>,
}

impl State {
    pub fn holds(&self, atom: &GroundAtom) -> bool {
        self.facts.contains(atom)
    }

    pub fn duty_status(&self, id: &DutyId) -> Option<DutyStatus> {
        self.duties.get(id).copied()
    }

    /// Duty instances currently active.
    pub fn active_duties(&self) -> impl Iterator<Item = &DutyId> {
        self.duties
            .iter()
            .filter(|(_, s)| **s == DutyStatus::Active)
            .map(|(id, _)| id)
    }
}
