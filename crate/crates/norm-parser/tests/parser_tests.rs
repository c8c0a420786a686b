use norm_core::{check_wellformed, Formula};
use norm_parser::{parse_model, parse_trace, serialize_model};

fn library_text() -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../assets/library.norm");
    std::fs::read_to_string(path).expect("bundled model")
}

#[test]
fn bundled_library_model_parses_cleanly() {
    let (model, warnings) = parse_model(&library_text()).expect("parses");
    assert!(warnings.is_empty(), "unexpected warnings: {warnings:?}");
    assert_eq!(model.domains.len(), 4);
    assert_eq!(model.facts.len(), 4);
    assert_eq!(model.acts.len(), 4);
    assert_eq!(model.duties.len(), 1);
    assert!(model.initial.is_empty());
    assert_eq!(check_wellformed(&model), vec![]);
}

#[test]
fn empty_input_warns() {
    let (model, warnings) = parse_model("").expect("empty model is fine");
    assert_eq!(model.declaration_count(), 0);
    assert_eq!(warnings.len(), 1);
    assert!(warnings[0].message.contains("empty model"));
    assert!(!warnings[0].is_error());

    let (_, warnings) = parse_model("# comments only\n").expect("still fine");
    assert_eq!(warnings.len(), 1);
}

#[test]
fn unclosed_paren_is_one_positioned_error() {
    let diags = parse_model("Act borrow(actor: Agent").unwrap_err();
    let errors: Vec<_> = diags.iter().filter(|d| d.is_error()).collect();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0].line, 1);
    assert!(errors[0].message.contains("`)`"));
}

#[test]
fn unknown_references_are_positioned() {
    let text = "Domain Agent = alice\n\
                Fact ok(Agent)\n\
                Act go(actor: Agent)\n  pre: missing(actor)\n";
    let diags = parse_model(text).unwrap_err();
    assert!(diags.iter().any(|d| d.message.contains("unknown fact `missing`") && d.line == 4));

    let text = "Domain Agent = alice\n\
                Duty d(holder: Agent)\n  created-by: go\n  enforced-by: go\n  terminated-by: go\n";
    let diags = parse_model(text).unwrap_err();
    assert!(diags.iter().any(|d| d.message.contains("unknown act `go`") && d.line == 3));
}

#[test]
fn formula_precedence_follows_the_grammar() {
    let text = "Domain D = c\nFact a\nFact b\nFact e\n\
                Act go(actor: D)\n  pre: not a and b or e -> a\n";
    let (model, _) = parse_model(text).expect("parses");
    // not > and > or > ->
    let expected = Formula::implies(
        Formula::or(
            Formula::and(Formula::not(Formula::atom("a", vec![])), Formula::atom("b", vec![])),
            Formula::atom("e", vec![]),
        ),
        Formula::atom("a", vec![]),
    );
    assert_eq!(model.acts[0].precondition, expected);
}

#[test]
fn derived_facts_use_canonical_parameter_names() {
    let text = "Domain Agent = alice\nFact member(Agent)\nFact suspended(Agent)\n\
                Fact may-borrow(Agent) = member(agent) and not suspended(agent) source: \"reg\"\n";
    let (model, warnings) = parse_model(text).expect("parses");
    assert!(warnings.is_empty());
    let fact = model.fact("may-borrow").unwrap();
    assert!(fact.is_derived());
    assert_eq!(check_wellformed(&model), vec![]);

    // A variable that is not the canonical name is an unknown constant.
    let bad = "Domain Agent = alice\nFact member(Agent)\n\
               Fact vip(Agent) = member(a) source: \"reg\"\n";
    let (model, _) = parse_model(bad).expect("name resolution passes");
    assert!(check_wellformed(&model).iter().any(|d| d.is_error()));
}

#[test]
fn trace_parses_one_act_per_line() {
    let (model, _) = parse_model(&library_text()).unwrap();
    let trace = parse_trace("borrow(alice, b1)\nreturn(alice, b1)\n", &model).unwrap();
    assert_eq!(trace.len(), 2);
    assert_eq!(trace.acts[0].to_string(), "borrow(alice, b1)");

    let trace = parse_trace("# comment only\n", &model).unwrap();
    assert!(trace.is_empty());
}

#[test]
fn trace_errors_are_resolved_against_the_model() {
    let (model, _) = parse_model(&library_text()).unwrap();

    let diags = parse_trace("borrow(alice)\n", &model).unwrap_err();
    assert!(diags[0].message.contains("takes 2 arguments"));

    let diags = parse_trace("shelve(alice, b1)\n", &model).unwrap_err();
    assert!(diags[0].message.contains("unknown act"));

    let diags = parse_trace("borrow(bob, b1)\n", &model).unwrap_err();
    assert!(diags[0].message.contains("unknown constant `bob`"));
}

#[test]
fn serialize_emits_one_domain_line() {
    let mut model = norm_core::Model::default();
    model.domains.push(norm_core::ObjectDomain::new("Agent", vec!["alice".into(), "bob".into()]));
    assert_eq!(serialize_model(&model), "Domain Agent = alice, bob\n");
}

#[test]
fn serialize_is_deterministic_and_round_trips() {
    let (model, _) = parse_model(&library_text()).unwrap();
    let first = serialize_model(&model);
    let second = serialize_model(&model);
    assert_eq!(first, second);

    let (reparsed, warnings) = parse_model(&first).expect("canonical text parses");
    assert!(warnings.is_empty());
    assert_eq!(reparsed, model);
}

#[test]
fn source_strings_round_trip_with_escapes() {
    let text = "Domain D = c\nFact a\nAct go(actor: D)\n  source: \"he said \\\"now\\\", twice\\\\\"\n";
    let (model, _) = parse_model(text).expect("parses");
    assert_eq!(model.acts[0].sources[0], "he said \"now\", twice\\");
    let (reparsed, _) = parse_model(&serialize_model(&model)).expect("round trip");
    assert_eq!(reparsed, model);
}
