//! Stuck-duty detection over an explored state graph.
//!
//! A duty instance is stuck in a state when it is active there and none of
//! its terminating or enforcing acts is enabled in that state or in any
//! state reachable from it within the graph. A stuck duty can neither be
//! discharged nor sanctioned: the operational counterpart of a deontic
//! conflict. Reports are relative to the explored horizon.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use norm_core::{DutyId, GroundAct, GroundModel};

use crate::apply::{enabled, ApplyError};
use crate::explore::StateGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictReason {
    StuckDuty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub duty: DutyId,
    /// Node index into the graph's states.
    pub state_index: usize,
    pub reason: ConflictReason,
    /// A shortest path of acts from the root to the state.
    pub witness: Vec<GroundAct>,
}

/// Reports every (state, active duty instance) pair that is stuck within the
/// graph. An empty list means the model is conflict-free at this horizon.
pub fn detect_conflicts(
    gm: &GroundModel,
    graph: &StateGraph,
) -> Result<Vec<ConflictReport>, ApplyError> {
    // Nodes where each duty identity is active.
    let mut active_at: BTreeMap<DutyId, Vec<usize>> = BTreeMap::new();
    for (i, state) in graph.nodes.iter().enumerate() {
        for id in state.active_duties() {
            active_at.entry(id.clone()).or_default().push(i);
        }
    }
    if active_at.is_empty() {
        return Ok(Vec::new());
    }

    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); graph.nodes.len()];
    for edge in &graph.edges {
        reverse[edge.to].push(edge.from);
    }

    let mut reports = Vec::new();
    for (id, active_nodes) in &active_at {
        let duty = gm
            .model()
            .duty(&id.frame)
            .expect("duty frames of instances exist in the model");

        // Ground acts that would discharge or sanction this exact instance.
        let relieving: Vec<&GroundAct> = gm
            .acts()
            .iter()
            .filter(|act| {
                (duty.terminated_by.contains(&act.frame) || duty.enforced_by.contains(&act.frame))
                    && gm.duty_id_for_act(duty, act).as_ref() == Some(id)
            })
            .collect();

        // States with a relieving act enabled, then everything that can
        // reach one of them inside the graph.
        let mut relieved: BTreeSet<usize> = BTreeSet::new();
        for (i, state) in graph.nodes.iter().enumerate() {
            for act in &relieving {
                if enabled(gm, state, act)? {
                    relieved.insert(i);
                    break;
                }
            }
        }
        let mut can_reach = relieved.clone();
        let mut queue: VecDeque<usize> = relieved.into_iter().collect();
        while let Some(node) = queue.pop_front() {
            for &pred in &reverse[node] {
                if can_reach.insert(pred) {
                    queue.push_back(pred);
                }
            }
        }

        for &node in active_nodes {
            if !can_reach.contains(&node) {
                reports.push(ConflictReport {
                    duty: id.clone(),
                    state_index: node,
                    reason: ConflictReason::StuckDuty,
                    witness: graph.witness(node),
                });
            }
        }
    }

    reports.sort_by(|a, b| (a.state_index, &a.duty).cmp(&(b.state_index, &b.duty)));
    Ok(reports)
}
