//! Applying a single ground act to a state.

use std::collections::HashMap;

use norm_core::{
    eval, ground_atom, substitute, substitute_atom, DutyStatus, EvalError, Formula, GroundAct,
    GroundModel, State,
};
use thiserror::Error;

use crate::event::EventKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApplyError {
    /// The act's precondition is false in the given state. The state is left
    /// unchanged; a trace containing this act is not executable there.
    #[error("act `{act}` is not enabled: precondition `{precondition}` is false")]
    PreconditionViolated { act: GroundAct, precondition: Formula },
    /// Defects: acts that do not belong to the ground model.
    #[error("act `{0}` does not match any frame of the model")]
    UnknownAct(GroundAct),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn act_binding(gm: &GroundModel, act: &GroundAct) -> Result<HashMap<String, String>, ApplyError> {
    let pairs = gm.binding(act).ok_or_else(|| ApplyError::UnknownAct(act.clone()))?;
    Ok(pairs.into_iter().map(|(p, c)| (p.to_string(), c.to_string())).collect())
}

/// True iff the act's precondition holds in `state`.
pub fn enabled(gm: &GroundModel, state: &State, act: &GroundAct) -> Result<bool, ApplyError> {
    let frame = gm.act_frame(&act.frame).ok_or_else(|| ApplyError::UnknownAct(act.clone()))?;
    let binding = act_binding(gm, act)?;
    let precondition = substitute(&frame.precondition, &binding)?;
    Ok(eval(gm, state, &precondition)?)
}

/// Applies `act` to `state`, producing the successor state and the events in
/// emission order: act-performed, fact terminations, fact creations, then
/// duty terminations, enforcements and creations.
///
/// The precondition is evaluated on the pre-state; a disabled act returns
/// [`ApplyError::PreconditionViolated`] and produces nothing.
pub fn apply(
    gm: &GroundModel,
    state: &State,
    act: &GroundAct,
) -> Result<(State, Vec<EventKind>), ApplyError> {
    let frame = gm.act_frame(&act.frame).ok_or_else(|| ApplyError::UnknownAct(act.clone()))?;
    let binding = act_binding(gm, act)?;

    let precondition = substitute(&frame.precondition, &binding)?;
    if !eval(gm, state, &precondition)? {
        return Err(ApplyError::PreconditionViolated { act: act.clone(), precondition });
    }

    let mut next = state.clone();
    let mut events = vec![EventKind::ActPerformed(act.clone())];

    // Fact updates first, terminations before creations. Events report
    // actual changes only.
    for atom in &frame.terminates {
        let ground = ground_atom(&substitute_atom(atom, &binding)?)?;
        if next.facts.remove(&ground) {
            events.push(EventKind::FactTerminated(ground));
        }
    }
    for atom in &frame.creates {
        let ground = ground_atom(&substitute_atom(atom, &binding)?)?;
        if next.facts.insert(ground.clone()) {
            events.push(EventKind::FactCreated(ground));
        }
    }

    // Duty lifecycle: termination, then enforcement, then creation, so an
    // act in several roles closes an old instance before opening a new one.
    for duty in &gm.model().duties {
        if !duty.terminated_by.contains(&act.frame) {
            continue;
        }
        let id = gm.duty_id_for_act(duty, act).ok_or_else(|| ApplyError::UnknownAct(act.clone()))?;
        if next.duties.get(&id) == Some(&DutyStatus::Active) {
            next.duties.insert(id.clone(), DutyStatus::Terminated);
            events.push(EventKind::DutyTerminated(id));
        }
    }
    for duty in &gm.model().duties {
        if !duty.enforced_by.contains(&act.frame) {
            continue;
        }
        let id = gm.duty_id_for_act(duty, act).ok_or_else(|| ApplyError::UnknownAct(act.clone()))?;
        if next.duties.get(&id) == Some(&DutyStatus::Active) {
            next.duties.insert(id.clone(), DutyStatus::Enforced);
            events.push(EventKind::DutyEnforced(id));
        }
    }
    for duty in &gm.model().duties {
        if !duty.created_by.contains(&act.frame) {
            continue;
        }
        let id = gm.duty_id_for_act(duty, act).ok_or_else(|| ApplyError::UnknownAct(act.clone()))?;
        // Re-creating an active duty is idempotent; a terminated or enforced
        // instance re-enters the active state.
        if next.duties.get(&id) != Some(&DutyStatus::Active) {
            next.duties.insert(id.clone(), DutyStatus::Active);
            events.push(EventKind::DutyCreated(id));
        }
    }

    Ok((next, events))
}
