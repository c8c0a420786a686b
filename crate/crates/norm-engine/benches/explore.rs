//! Frontier-expansion strategies compared on a scaled lending model.
//!
//! Run with `cargo bench -p norm-engine`. The `parallel` results require the
//! default `parallel` feature; `explore` falls back to the sequential path
//! without it.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use norm_core::{
    ground_model, ActFrame, DutyFrame, FactSymbol, Formula, GroundModel, Model, ObjectDomain,
    Param, Term,
};
use norm_engine::{explore, explore_sequential, ExploreConfig};

/// A lending model with `agents` members and `items` books.
fn lending_model(agents: usize, items: usize) -> GroundModel {
    let var = |n: &str| Term::Var(n.into());
    let mut model = Model::default();
    model.domains.push(ObjectDomain::new(
        "Agent",
        (0..agents).map(|i| format!("member{i}")).collect(),
    ));
    model
        .domains
        .push(ObjectDomain::new("Item", (0..items).map(|i| format!("book{i}")).collect()));
    model.domains.push(ObjectDomain::new("Clock", vec!["clock".into()]));
    model.domains.push(ObjectDomain::new("Staff", vec!["librarian".into()]));

    model.facts.push(FactSymbol::atomic("borrowed", vec!["Agent".into(), "Item".into()]));
    model.facts.push(FactSymbol::atomic("returned", vec!["Agent".into(), "Item".into()]));
    model.facts.push(FactSymbol::atomic("overdue", vec!["Item".into()]));
    model.facts.push(FactSymbol::atomic("disciplined", vec!["Agent".into(), "Item".into()]));

    model.acts.push(ActFrame {
        name: "borrow".into(),
        actor: Param::new("actor", "Agent"),
        object_params: vec![Param::new("item", "Item")],
        precondition: Formula::not(Formula::atom("borrowed", vec![var("actor"), var("item")])),
        creates: vec![norm_core::Atom::new("borrowed", vec![var("actor"), var("item")])],
        terminates: vec![],
        sources: vec!["bench".into()],
    });
    model.acts.push(ActFrame {
        name: "due-date-passes".into(),
        actor: Param::new("actor", "Clock"),
        object_params: vec![Param::new("holder", "Agent"), Param::new("item", "Item")],
        precondition: Formula::and(
            Formula::atom("borrowed", vec![var("holder"), var("item")]),
            Formula::not(Formula::atom("returned", vec![var("holder"), var("item")])),
        ),
        creates: vec![norm_core::Atom::new("overdue", vec![var("item")])],
        terminates: vec![],
        sources: vec!["bench".into()],
    });
    model.acts.push(ActFrame {
        name: "return".into(),
        actor: Param::new("actor", "Agent"),
        object_params: vec![Param::new("item", "Item")],
        precondition: Formula::atom("borrowed", vec![var("actor"), var("item")]),
        creates: vec![norm_core::Atom::new("returned", vec![var("actor"), var("item")])],
        terminates: vec![
            norm_core::Atom::new("borrowed", vec![var("actor"), var("item")]),
            norm_core::Atom::new("overdue", vec![var("item")]),
        ],
        sources: vec!["bench".into()],
    });
    model.acts.push(ActFrame {
        name: "take-disciplinary-action".into(),
        actor: Param::new("actor", "Staff"),
        object_params: vec![Param::new("holder", "Agent"), Param::new("item", "Item")],
        precondition: Formula::and(
            Formula::atom("overdue", vec![var("item")]),
            Formula::not(Formula::atom("returned", vec![var("holder"), var("item")])),
        ),
        creates: vec![norm_core::Atom::new("disciplined", vec![var("holder"), var("item")])],
        terminates: vec![],
        sources: vec!["bench".into()],
    });

    model.duties.push(DutyFrame {
        name: "return-duty".into(),
        holder: Param::new("holder", "Agent"),
        object_params: vec![Param::new("item", "Item")],
        created_by: vec!["borrow".into()],
        enforced_by: vec!["take-disciplinary-action".into()],
        terminated_by: vec!["return".into()],
        sources: vec!["bench".into()],
    });

    ground_model(&model).unwrap()
}

fn bench_explore(c: &mut Criterion) {
    let mut group = c.benchmark_group("explore");
    group.sample_size(10);

    for (agents, items, horizon) in [(2, 2, 5), (3, 2, 5), (3, 3, 4)] {
        let gm = lending_model(agents, items);
        let initial = gm.model().initial_state();
        let config = ExploreConfig::new(horizon);
        let label = format!("a{agents}_i{items}_h{horizon}");

        // Identical outputs by contract; measure both strategies.
        let seq = explore_sequential(&gm, &initial, &config).unwrap();
        let par = explore(&gm, &initial, &config).unwrap();
        assert_eq!(seq, par);

        group.bench_with_input(BenchmarkId::new("sequential", &label), &config, |b, cfg| {
            b.iter(|| explore_sequential(&gm, &initial, cfg).unwrap().nodes.len())
        });
        group.bench_with_input(BenchmarkId::new("parallel", &label), &config, |b, cfg| {
            b.iter(|| explore(&gm, &initial, cfg).unwrap().nodes.len())
        });
    }

    group.finish();
}

criterion_group!(benches, bench_explore);
criterion_main!(benches);
