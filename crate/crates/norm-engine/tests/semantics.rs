//! Behaviour of the engine on the bundled lending model and fixtures.

use norm_core::{ground_model, DutyStatus, GroundAct, GroundModel};
use norm_engine::{
    apply, detect_conflicts, enabled, explore, run, ApplyError, ExploreConfig, ExploreError,
};
use norm_parser::parse_model;

fn load(path: &str) -> GroundModel {
    let full = format!("{}/../../assets/{path}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(full).expect("asset exists");
    let (model, _) = parse_model(&text).expect("asset parses");
    ground_model(&model).expect("asset is well-formed")
}

fn act(name: &str, args: &[&str]) -> GroundAct {
    GroundAct::new(name, args.iter().map(|a| a.to_string()).collect())
}

#[test]
fn preconditions_gate_enabledness() {
    let gm = load("library.norm");
    let init = gm.model().initial_state();
    let borrow = act("borrow", &["alice", "b1"]);

    assert!(enabled(&gm, &init, &borrow).unwrap());
    let (after_borrow, _) = apply(&gm, &init, &borrow).unwrap();
    assert!(!enabled(&gm, &after_borrow, &borrow).unwrap());

    // Disciplinary action needs an overdue, unreturned book.
    let discipline = act("take-disciplinary-action", &["librarian", "alice", "b1"]);
    assert!(!enabled(&gm, &after_borrow, &discipline).unwrap());
}

#[test]
fn borrowing_creates_the_duty() {
    let gm = load("library.norm");
    let init = gm.model().initial_state();
    let (state, events) = apply(&gm, &init, &act("borrow", &["alice", "b1"])).unwrap();

    let kinds: Vec<&str> = events.iter().map(|e| e.name()).collect();
    assert_eq!(kinds, vec!["act-performed", "fact-created", "duty-created"]);
    assert_eq!(events[1].subject(), "borrowed(alice, b1)");
    assert_eq!(events[2].subject(), "return-duty(alice, b1)");

    assert!(state.facts.iter().any(|f| f.to_string() == "borrowed(alice, b1)"));
    let duty = state.duties.iter().next().unwrap();
    assert_eq!(duty.0.to_string(), "return-duty(alice, b1)");
    assert_eq!(*duty.1, DutyStatus::Active);
}

#[test]
fn returning_terminates_the_duty() {
    let gm = load("library.norm");
    let init = gm.model().initial_state();
    let (after_borrow, _) = apply(&gm, &init, &act("borrow", &["alice", "b1"])).unwrap();
    let (state, events) = apply(&gm, &after_borrow, &act("return", &["alice", "b1"])).unwrap();

    let kinds: Vec<&str> = events.iter().map(|e| e.name()).collect();
    assert_eq!(kinds, vec!["act-performed", "fact-terminated", "fact-created", "duty-terminated"]);
    assert!(!state.facts.iter().any(|f| f.to_string() == "borrowed(alice, b1)"));
    assert!(state.facts.iter().any(|f| f.to_string() == "returned(alice, b1)"));
    assert_eq!(state.duties.values().next(), Some(&DutyStatus::Terminated));
}

#[test]
fn disabled_acts_fail_and_change_nothing() {
    let gm = load("library.norm");
    let init = gm.model().initial_state();
    let before = init.clone();
    let err = apply(&gm, &init, &act("return", &["alice", "b1"])).unwrap_err();
    assert!(matches!(err, ApplyError::PreconditionViolated { .. }));
    assert_eq!(init, before);
}

#[test]
fn compliant_trace_runs_without_enforcement() {
    let gm = load("library.norm");
    let trace = vec![act("borrow", &["alice", "b1"]), act("return", &["alice", "b1"])];
    let result = run(&gm, &gm.model().initial_state(), &trace);

    assert!(result.outcome.is_completed());
    assert_eq!(result.states.len(), 3);
    let enforced = result.events.iter().filter(|e| e.kind.name() == "duty-enforced").count();
    assert_eq!(enforced, 0);
    assert_eq!(result.final_state().duties.values().next(), Some(&DutyStatus::Terminated));
}

#[test]
fn contrary_to_duty_trace_enforces_exactly_once() {
    let gm = load("library.norm");
    let trace = vec![
        act("borrow", &["alice", "b1"]),
        act("due-date-passes", &["clock", "alice", "b1"]),
        act("take-disciplinary-action", &["librarian", "alice", "b1"]),
    ];
    let result = run(&gm, &gm.model().initial_state(), &trace);

    assert!(result.outcome.is_completed());
    let enforced: Vec<_> =
        result.events.iter().filter(|e| e.kind.name() == "duty-enforced").collect();
    assert_eq!(enforced.len(), 1);
    assert_eq!(enforced[0].step, 2);
    assert_eq!(result.final_state().duties.values().next(), Some(&DutyStatus::Enforced));
}

#[test]
fn empty_trace_completes_in_place() {
    let gm = load("library.norm");
    let init = gm.model().initial_state();
    let result = run(&gm, &init, &[]);
    assert!(result.outcome.is_completed());
    assert_eq!(result.states, vec![init]);
    assert!(result.events.is_empty());
}

#[test]
fn failing_trace_reports_the_step() {
    let gm = load("library.norm");
    let trace = vec![act("return", &["alice", "b1"])];
    let result = run(&gm, &gm.model().initial_state(), &trace);
    match result.outcome {
        norm_engine::RunOutcome::FailedAt { step, ref error } => {
            assert_eq!(step, 0);
            assert!(matches!(error, ApplyError::PreconditionViolated { .. }));
        }
        ref other => panic!("expected failure, got {other:?}"),
    }
    assert_eq!(result.states.len(), 1);
}

#[test]
fn horizon_zero_is_just_the_initial_node() {
    let gm = load("library.norm");
    let graph = explore(&gm, &gm.model().initial_state(), &ExploreConfig::new(0)).unwrap();
    assert_eq!(graph.nodes.len(), 1);
    assert!(graph.edges.is_empty());
}

#[test]
fn only_borrow_is_enabled_initially() {
    let gm = load("library.norm");
    let graph = explore(&gm, &gm.model().initial_state(), &ExploreConfig::new(1)).unwrap();
    assert_eq!(graph.nodes.len(), 2);
    assert_eq!(graph.edges.len(), 1);
    assert_eq!(graph.edges[0].act.to_string(), "borrow(alice, b1)");
}

#[test]
fn lending_model_is_conflict_free_at_horizon_six() {
    let gm = load("library.norm");
    let graph = explore(&gm, &gm.model().initial_state(), &ExploreConfig::new(6)).unwrap();
    let conflicts = detect_conflicts(&gm, &graph).unwrap();
    assert_eq!(conflicts, vec![]);
}

#[test]
fn stuck_duty_is_reported_with_a_witness() {
    let gm = load("stuck.norm");
    let graph = explore(&gm, &gm.model().initial_state(), &ExploreConfig::new(3)).unwrap();
    let conflicts = detect_conflicts(&gm, &graph).unwrap();

    assert_eq!(conflicts.len(), 1);
    assert_eq!(conflicts[0].duty.to_string(), "pledge-duty(ann)");
    assert_eq!(conflicts[0].state_index, 1);
    let witness: Vec<String> = conflicts[0].witness.iter().map(|a| a.to_string()).collect();
    assert_eq!(witness, vec!["pledge(ann)"]);
}

#[test]
fn models_without_duties_are_vacuously_conflict_free() {
    let text = "Domain D = c\nFact on\nAct flip(actor: D)\n  pre: not on\n  creates: on\n  source: \"s\"\n";
    let (model, _) = parse_model(text).unwrap();
    let gm = ground_model(&model).unwrap();
    let graph = explore(&gm, &gm.model().initial_state(), &ExploreConfig::new(4)).unwrap();
    assert_eq!(detect_conflicts(&gm, &graph).unwrap(), vec![]);
}

#[test]
fn node_cap_is_a_typed_error() {
    let gm = load("library.norm");
    let config = ExploreConfig { horizon: 3, node_cap: 2 };
    let err = explore(&gm, &gm.model().initial_state(), &config).unwrap_err();
    assert_eq!(err, ExploreError::NodeCapExceeded { cap: 2 });
}
