//! Canonical text for a model. The output reparses to a structurally equal
//! model and is byte-stable across calls.

use std::fmt::Write;

use norm_core::{Atom, FactKind, Formula, Model, Param};

pub fn serialize_model(model: &Model) -> String {
    let mut out = String::new();

    for domain in &model.domains {
        let _ = writeln!(out, "Domain {} = {}", domain.name, domain.members.join(", "));
    }

    for fact in &model.facts {
        let _ = write!(out, "Fact {}", fact.name);
        if !fact.params.is_empty() {
            let _ = write!(out, "({})", fact.params.join(", "));
        }
        if let FactKind::Derived(body) = &fact.kind {
            let _ = write!(out, " = {body}");
        }
        if !fact.sources.is_empty() {
            let _ = write!(out, " source: {}", quoted(&fact.sources));
        }
        out.push('\n');
    }

    for act in &model.acts {
        let _ = writeln!(out, "Act {}({})", act.name, params(&act.actor, &act.object_params));
        if act.precondition != Formula::Const(true) {
            let _ = writeln!(out, "  pre: {}", act.precondition);
        }
        if !act.creates.is_empty() {
            let _ = writeln!(out, "  creates: {}", atoms(&act.creates));
        }
        if !act.terminates.is_empty() {
            let _ = writeln!(out, "  terminates: {}", atoms(&act.terminates));
        }
        if !act.sources.is_empty() {
            let _ = writeln!(out, "  source: {}", quoted(&act.sources));
        }
    }

    for duty in &model.duties {
        let _ = writeln!(out, "Duty {}({})", duty.name, params(&duty.holder, &duty.object_params));
        let _ = writeln!(out, "  created-by: {}", duty.created_by.join(", "));
        let _ = writeln!(out, "  enforced-by: {}", duty.enforced_by.join(", "));
        let _ = writeln!(out, "  terminated-by: {}", duty.terminated_by.join(", "));
        if !duty.sources.is_empty() {
            let _ = writeln!(out, "  source: {}", quoted(&duty.sources));
        }
    }

    if !model.initial.is_empty() {
        let rendered: Vec<String> = model.initial.iter().map(|a| a.to_string()).collect();
        let _ = writeln!(out, "Init: {}", rendered.join(", "));
    }

    out
}

fn params(lead: &Param, rest: &[Param]) -> String {
    std::iter::once(lead)
        .chain(rest.iter())
        .map(|p| format!("{}: {}", p.name, p.domain))
        .collect::<Vec<_>>()
        .join(", ")
}

fn atoms(list: &[Atom]) -> String {
    list.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

fn quoted(sources: &[String]) -> String {
    sources
        .iter()
        .map(|s| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")))
        .collect::<Vec<_>>()
        .join(", ")
}
