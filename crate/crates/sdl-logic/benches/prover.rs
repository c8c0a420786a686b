//! Tableau and oracle timings, including the parallel/sequential enumeration
//! comparison (build with `--no-default-features --features random` for the
//! sequential enumeration path).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sdl_logic::{
    chisholm_report, consistent, enumerate_models, sdl_parse, SdlFormula, TableauConfig,
};

fn formulas(texts: &[&str]) -> Vec<SdlFormula> {
    texts.iter().map(|t| sdl_parse(t).unwrap()).collect()
}

fn bench_tableau(c: &mut Criterion) {
    let mixed = formulas(&["O(r)", "O(r -> ~p)", "~r -> O(p)", "~r"]);
    c.bench_function("tableau/chisholm_mixed", |b| {
        b.iter(|| consistent(&mixed, &TableauConfig::kd()).unwrap().is_satisfiable())
    });
    c.bench_function("tableau/chisholm_report", |b| {
        b.iter(|| chisholm_report(&TableauConfig::kd()).unwrap().len())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);

    let unsat = formulas(&["O(p)", "O(~p)"]);
    let nested = formulas(&["O(O(p))", "O(p -> q)", "~O(q)"]);
    for max_worlds in [3, 4, 5] {
        group.bench_with_input(
            BenchmarkId::new("flat_unsat", max_worlds),
            &max_worlds,
            |b, &n| b.iter(|| enumerate_models(&unsat, n).unwrap().len()),
        );
        group.bench_with_input(
            BenchmarkId::new("nested", max_worlds),
            &max_worlds,
            |b, &n| b.iter(|| enumerate_models(&nested, n).unwrap().len()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_tableau, bench_enumeration);
criterion_main!(benches);
