//! Grounding: instantiating parameterized frames over the finite domains.

use std::collections::HashMap;

use crate::check::{check_wellformed, duty_param_source, ModelDiagnostic};
use crate::model::{ActFrame, DutyFrame, DutyId, GroundAct, Model, Param};

/// A well-formed model together with every ground act and every potential
/// ground duty identity, in a fixed deterministic order.
#[derive(Debug, Clone)]
pub struct GroundModel {
    model: Model,
    acts: Vec<GroundAct>,
    duty_ids: Vec<DutyId>,
    act_frame_index: HashMap<String, usize>,
}

impl GroundModel {
    pub fn model(&self) -> &Model {
        &self.model
    }

    /// All ground acts, ordered lexicographically by frame name then by the
    /// argument constants.
    pub fn acts(&self) -> &[GroundAct] {
        &self.acts
    }

    /// All duty identities the model could ever instantiate, in the same
    /// lexicographic order.
    pub fn duty_ids(&self) -> &[DutyId] {
        &self.duty_ids
    }

    pub fn act_frame(&self, name: &str) -> Option<&ActFrame> {
        self.act_frame_index.get(name).map(|&i| &self.model.acts[i])
    }

    /// The binding of a ground act: parameter names zipped with constants.
    pub fn binding<'a>(&'a self, act: &'a GroundAct) -> Option<Vec<(&'a str, &'a str)>> {
        let frame = self.act_frame(&act.frame)?;
        if frame.arity() != act.args.len() {
            return None;
        }
        Some(
            frame
                .params()
                .zip(act.args.iter())
                .map(|(p, c)| (p.name.as_str(), c.as_str()))
                .collect(),
        )
    }

    /// The duty identity a ground act gives rise to for `duty`, if the act's
    /// frame can bind all duty parameters (guaranteed after well-formedness).
    pub fn duty_id_for_act(&self, duty: &DutyFrame, act: &GroundAct) -> Option<DutyId> {
        let frame = self.act_frame(&act.frame)?;
        let mut args = Vec::with_capacity(duty.arity());
        for duty_param in duty.params() {
            let source = duty_param_source(frame, duty_param)?;
            let position = frame.params().position(|p| p.name == source.name)?;
            args.push(act.args.get(position)?.clone());
        }
        Some(DutyId::new(duty.name.clone(), args))
    }
}

/// Grounds a model, rejecting ill-formed input.
pub fn ground_model(model: &Model) -> Result<GroundModel, Vec<ModelDiagnostic>> {
    let errors: Vec<ModelDiagnostic> =
        check_wellformed(model).into_iter().filter(|d| d.is_error()).collect();
    if !errors.is_empty() {
        return Err(errors);
    }

    let mut acts = Vec::new();
    for frame in &model.acts {
        let params: Vec<&Param> = frame.params().collect();
        for args in bindings(model, &params) {
            acts.push(GroundAct::new(frame.name.clone(), args));
        }
    }
    acts.sort();

    let mut duty_ids = Vec::new();
    for duty in &model.duties {
        let params: Vec<&Param> = duty.params().collect();
        for args in bindings(model, &params) {
            duty_ids.push(DutyId::new(duty.name.clone(), args));
        }
    }
    duty_ids.sort();

    let act_frame_index = model
        .acts
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), i))
        .collect();

    Ok(GroundModel { model: model.clone(), acts, duty_ids, act_frame_index })
}

/// Cartesian product of the parameter domains' members.
pub(crate) fn bindings(model: &Model, params: &[&Param]) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for param in params {
        let members = &model
            .domain(&param.domain)
            .expect("domains resolved by check_wellformed")
            .members;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                members.iter().map(move |m| {
                    let mut next = prefix.clone();
                    next.push(m.clone());
                    next
                })
            })
            .collect();
    }
    out
}
