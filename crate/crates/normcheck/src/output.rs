//! Text and JSON rendering. Both carry the same verdicts; lists are sorted
//! for byte-stable output.

use norm_core::{DutyId, GroundAct, GroundModel, State};
use norm_engine::{ConflictReport, RunOutcome, RunResult, StateGraph};
use sdl_logic::{ChisholmReportRow, KripkeModel, TableauResult};
use serde_json::{json, Value};

fn outcome_string(outcome: &RunOutcome) -> String {
    match outcome {
        RunOutcome::Completed => "completed".to_string(),
        RunOutcome::FailedAt { step, .. } => format!("failed-at({step})"),
    }
}

/// The binding of a duty instance as a name -> constant object.
fn duty_binding(gm: &GroundModel, id: &DutyId) -> Value {
    let params: Vec<String> = gm
        .model()
        .duty(&id.frame)
        .map(|d| d.params().map(|p| p.name.clone()).collect())
        .unwrap_or_default();
    Value::Object(
        params
            .into_iter()
            .zip(id.args.iter())
            .map(|(name, constant)| (name, Value::String(constant.clone())))
            .collect(),
    )
}

fn state_json(gm: &GroundModel, state: &State) -> Value {
    let facts: Vec<String> = state.facts.iter().map(|f| f.to_string()).collect();
    let duties: Vec<Value> = state
        .duties
        .iter()
        .map(|(id, status)| {
            json!({
                "name": id.frame,
                "binding": duty_binding(gm, id),
                "status": status.to_string(),
            })
        })
        .collect();
    json!({ "facts": facts, "duties": duties })
}

pub fn run_json(gm: &GroundModel, trace: &[GroundAct], result: &RunResult) -> Value {
    let steps: Vec<Value> = trace
        .iter()
        .enumerate()
        .take(result.states.len() - 1)
        .map(|(i, act)| {
            let events: Vec<Value> = result
                .events_at(i)
                .map(|kind| json!({ "kind": kind.name(), "subject": kind.subject() }))
                .collect();
            json!({ "act": act.to_string(), "events": events })
        })
        .collect();
    json!({
        "outcome": outcome_string(&result.outcome),
        "steps": steps,
        "final": state_json(gm, result.final_state()),
    })
}

pub fn print_run(trace: &[GroundAct], result: &RunResult) {
    for (i, act) in trace.iter().enumerate().take(result.states.len() - 1) {
        println!("step {i}: {act}");
        for kind in result.events_at(i) {
            println!("  {kind}");
        }
    }
    if let RunOutcome::FailedAt { step, error } = &result.outcome {
        println!("failed-at({step}): {error}");
    }
    let state = result.final_state();
    println!("final facts:");
    for fact in &state.facts {
        println!("  {fact}");
    }
    println!("final duties:");
    for (id, status) in &state.duties {
        println!("  {id}: {status}");
    }
}

pub fn explore_json(gm: &GroundModel, graph: &StateGraph, conflicts: &[ConflictReport]) -> Value {
    let conflict_values: Vec<Value> = conflicts
        .iter()
        .map(|c| {
            let witness: Vec<String> = c.witness.iter().map(|a| a.to_string()).collect();
            json!({
                "duty": c.duty.frame,
                "binding": duty_binding(gm, &c.duty),
                "state_index": c.state_index,
                "witness": witness,
            })
        })
        .collect();
    json!({
        "nodes": graph.nodes.len(),
        "edges": graph.edges.len(),
        "conflicts": conflict_values,
    })
}

pub fn print_explore(graph: &StateGraph, conflicts: &[ConflictReport]) {
    println!("nodes: {}", graph.nodes.len());
    println!("edges: {}", graph.edges.len());
    println!("conflicts: {}", conflicts.len());
    for c in conflicts {
        let witness: Vec<String> = c.witness.iter().map(|a| a.to_string()).collect();
        println!(
            "  stuck duty {} at state {} (reached by: {})",
            c.duty,
            c.state_index,
            if witness.is_empty() { "initial state".to_string() } else { witness.join("; ") }
        );
    }
    // Conflicts are relative to the explored horizon.
    if !conflicts.is_empty() {
        println!("note: stuck within horizon {}", graph.horizon);
    }
}

fn model_json(model: &KripkeModel) -> Value {
    let worlds: Vec<String> = (0..model.worlds).map(|w| format!("w{w}")).collect();
    let edges: Vec<Value> = (0..model.worlds)
        .flat_map(|w| {
            model.accessibility[w]
                .iter()
                .map(move |v| json!([format!("w{w}"), format!("w{v}")]))
        })
        .collect();
    let valuation: Value = Value::Object(
        (0..model.worlds)
            .map(|w| {
                let atoms: Vec<Value> = model.valuation[w]
                    .iter()
                    .map(|a| Value::String(a.clone()))
                    .collect();
                (format!("w{w}"), Value::Array(atoms))
            })
            .collect(),
    );
    json!({ "worlds": worlds, "edges": edges, "valuation": valuation })
}

pub fn verdict_json(result: &TableauResult) -> Value {
    match result {
        TableauResult::Satisfiable(model) => json!({
            "verdict": "satisfiable",
            "model": model_json(model),
            "certificate_size": Value::Null,
        }),
        TableauResult::Unsatisfiable(cert) => json!({
            "verdict": "unsatisfiable",
            "model": Value::Null,
            "certificate_size": cert.size(),
        }),
    }
}

pub fn print_verdict(result: &TableauResult) {
    match result {
        TableauResult::Satisfiable(model) => {
            println!("satisfiable");
            print!("{model}");
        }
        TableauResult::Unsatisfiable(cert) => {
            println!("unsatisfiable");
            println!(
                "closed branches: {}, rule applications: {}",
                cert.branches.len(),
                cert.size()
            );
        }
    }
}

pub fn chisholm_row_json(row: &ChisholmReportRow) -> Value {
    let mut value = verdict_json(&row.result);
    let obj = value.as_object_mut().unwrap();
    obj.insert("encoding".to_string(), Value::String(row.encoding.label()));
    let formulas: Vec<String> = row.encoding.formulas.iter().map(|f| f.to_string()).collect();
    obj.insert("formulas".to_string(), json!(formulas));
    obj.insert("rule2_entailed".to_string(), Value::Bool(row.rule2_entailed));
    obj.insert("rule3_entailed".to_string(), Value::Bool(row.rule3_entailed));
    value
}

pub fn print_chisholm(rows: &[ChisholmReportRow]) {
    for row in rows {
        let verdict = if row.result.is_satisfiable() { "satisfiable" } else { "unsatisfiable" };
        let mut notes = Vec::new();
        if row.rule2_entailed {
            notes.push("rule 2 entailed by the others");
        }
        if row.rule3_entailed {
            notes.push("rule 3 entailed by the others");
        }
        let notes =
            if notes.is_empty() { String::new() } else { format!("  [{}]", notes.join("; ")) };
        println!("{:<16} {verdict}{notes}", row.encoding.label());
    }
}
