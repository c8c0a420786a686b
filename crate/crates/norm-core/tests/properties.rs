//! Property tests for grounding and evaluation, each checked against an
//! independently written oracle.

use std::collections::HashMap;

use norm_core::{
    eval, ground_model, substitute, FactKind, FactSymbol, Formula, GroundAtom, GroundModel, Model,
    ObjectDomain, State, Term,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Inlines every derived atom, leaving a formula over atomic symbols only.
/// This is the oracle's expansion route; the production path expands lazily
/// during evaluation instead.
fn expand(model: &Model, formula: &Formula) -> Formula {
    match formula {
        Formula::Const(b) => Formula::Const(*b),
        Formula::Not(g) => Formula::not(expand(model, g)),
        Formula::And(l, r) => Formula::and(expand(model, l), expand(model, r)),
        Formula::Or(l, r) => Formula::or(expand(model, l), expand(model, r)),
        Formula::Implies(l, r) => Formula::implies(expand(model, l), expand(model, r)),
        Formula::Atom(atom) => {
            let symbol = model.fact(&atom.symbol).expect("known symbol");
            match &symbol.kind {
                FactKind::Atomic => Formula::Atom(atom.clone()),
                FactKind::Derived(body) => {
                    let binding: HashMap<String, String> = symbol
                        .canonical_params()
                        .into_iter()
                        .zip(atom.args.iter().map(|t| t.name().to_string()))
                        .collect();
                    expand(model, &substitute(body, &binding).expect("ground atom"))
                }
            }
        }
    }
}

/// Naive truth-table evaluation of an atomic-only ground formula.
fn tt_eval(formula: &Formula, truth: &State) -> bool {
    match formula {
        Formula::Const(b) => *b,
        Formula::Atom(atom) => {
            let args = atom.args.iter().map(|t| t.name().to_string()).collect();
            truth.holds(&GroundAtom::new(atom.symbol.clone(), args))
        }
        Formula::Not(g) => !tt_eval(g, truth),
        Formula::And(l, r) => tt_eval(l, truth) && tt_eval(r, truth),
        Formula::Or(l, r) => tt_eval(l, truth) || tt_eval(r, truth),
        Formula::Implies(l, r) => !tt_eval(l, truth) || tt_eval(r, truth),
    }
}

/// Environment-carrying interpreter: resolves variables at evaluation time
/// instead of substituting up front.
fn eval_env(gm: &GroundModel, state: &State, formula: &Formula, env: &HashMap<String, String>) -> bool {
    match formula {
        Formula::Const(b) => *b,
        Formula::Not(g) => !eval_env(gm, state, g, env),
        Formula::And(l, r) => eval_env(gm, state, l, env) && eval_env(gm, state, r, env),
        Formula::Or(l, r) => eval_env(gm, state, l, env) || eval_env(gm, state, r, env),
        Formula::Implies(l, r) => !eval_env(gm, state, l, env) || eval_env(gm, state, r, env),
        Formula::Atom(atom) => {
            let args: Vec<String> = atom
                .args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => c.clone(),
                    Term::Var(v) => env.get(v).expect("bound variable").clone(),
                })
                .collect();
            let symbol = gm.model().fact(&atom.symbol).expect("known symbol");
            match &symbol.kind {
                FactKind::Atomic => state.holds(&GroundAtom::new(atom.symbol.clone(), args)),
                FactKind::Derived(body) => {
                    let inner: HashMap<String, String> =
                        symbol.canonical_params().into_iter().zip(args).collect();
                    eval_env(gm, state, body, &inner)
                }
            }
        }
    }
}

/// A ground-atom universe of three atomic facts plus one derived fact.
fn oracle_model() -> GroundModel {
    let mut model = Model::default();
    model.domains.push(ObjectDomain::new("Agent", vec!["alice".into()]));
    model.domains.push(ObjectDomain::new("Item", vec!["b1".into()]));
    model.facts.push(FactSymbol::atomic("member", vec!["Agent".into()]));
    model.facts.push(FactSymbol::atomic("suspended", vec!["Agent".into()]));
    model.facts.push(FactSymbol::atomic("borrowed", vec!["Agent".into(), "Item".into()]));
    let mut may_borrow = FactSymbol::derived(
        "may-borrow",
        vec!["Agent".into()],
        Formula::and(
            Formula::atom("member", vec![Term::Var("agent".into())]),
            Formula::not(Formula::atom("suspended", vec![Term::Var("agent".into())])),
        ),
    );
    may_borrow.sources = vec!["regulations".into()];
    model.facts.push(may_borrow);
    ground_model(&model).unwrap()
}

fn universe() -> Vec<GroundAtom> {
    vec![
        GroundAtom::new("member", vec!["alice".into()]),
        GroundAtom::new("suspended", vec!["alice".into()]),
        GroundAtom::new("borrowed", vec!["alice".into(), "b1".into()]),
    ]
}

fn all_states(atoms: &[GroundAtom]) -> Vec<State> {
    (0..1usize << atoms.len())
        .map(|bits| {
            let mut state = State::default();
            for (i, atom) in atoms.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    state.facts.insert(atom.clone());
                }
            }
            state
        })
        .collect()
}

/// A random ground formula of the given depth over the oracle model.
fn random_ground_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..5) {
            0 => Formula::atom("member", vec![Term::Const("alice".into())]),
            1 => Formula::atom("suspended", vec![Term::Const("alice".into())]),
            2 => Formula::atom("borrowed", vec![Term::Const("alice".into()), Term::Const("b1".into())]),
            3 => Formula::atom("may-borrow", vec![Term::Const("alice".into())]),
            _ => Formula::Const(rng.gen_bool(0.5)),
        };
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_ground_formula(rng, depth - 1)),
        1 => Formula::and(
            random_ground_formula(rng, depth - 1),
            random_ground_formula(rng, depth - 1),
        ),
        2 => Formula::or(
            random_ground_formula(rng, depth - 1),
            random_ground_formula(rng, depth - 1),
        ),
        _ => Formula::implies(
            random_ground_formula(rng, depth - 1),
            random_ground_formula(rng, depth - 1),
        ),
    }
}

/// A random formula over variables x: Agent, y: Item (possibly with constants).
fn random_open_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let agent = if rng.gen_bool(0.7) {
            Term::Var("x".into())
        } else {
            Term::Const("alice".into())
        };
        let item = if rng.gen_bool(0.7) { Term::Var("y".into()) } else { Term::Const("b1".into()) };
        return match rng.gen_range(0..4) {
            0 => Formula::atom("member", vec![agent]),
            1 => Formula::atom("suspended", vec![agent]),
            2 => Formula::atom("borrowed", vec![agent, item]),
            _ => Formula::atom("may-borrow", vec![agent]),
        };
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_open_formula(rng, depth - 1)),
        1 => Formula::and(random_open_formula(rng, depth - 1), random_open_formula(rng, depth - 1)),
        2 => Formula::or(random_open_formula(rng, depth - 1), random_open_formula(rng, depth - 1)),
        _ => Formula::implies(
            random_open_formula(rng, depth - 1),
            random_open_formula(rng, depth - 1),
        ),
    }
}

proptest! {
    /// The number of ground acts per frame is the product of its parameter
    /// domain sizes.
    #[test]
    fn grounding_counts_match_domain_products(seed in any::<u64>()) {
        let model = norm_core::random::model_from_seed(seed);
        let gm = ground_model(&model).unwrap();
        for frame in &model.acts {
            let expected: usize = frame
                .params()
                .map(|p| model.domain(&p.domain).unwrap().members.len())
                .product();
            let actual = gm.acts().iter().filter(|a| a.frame == frame.name).count();
            prop_assert_eq!(actual, expected);
        }
        // Initial states only ever contain positive atomic facts.
        for atom in &model.initial_state().facts {
            prop_assert!(!model.fact(&atom.symbol).unwrap().is_derived());
        }
    }

    /// `eval` agrees with the expand-then-truth-table oracle on every state
    /// over the universe, for random formulas of depth <= 5.
    #[test]
    fn eval_matches_truth_table_oracle(seed in any::<u64>()) {
        let gm = oracle_model();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let formula = random_ground_formula(&mut rng, 5);
        let expanded = expand(gm.model(), &formula);
        for state in all_states(&universe()) {
            prop_assert_eq!(
                eval(&gm, &state, &formula).unwrap(),
                tt_eval(&expanded, &state)
            );
        }
    }

    /// Substitute-then-eval agrees with the environment-carrying interpreter.
    #[test]
    fn substitution_agrees_with_environment_interpreter(seed in any::<u64>()) {
        let gm = oracle_model();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let formula = random_open_formula(&mut rng, 4);
        let env: HashMap<String, String> =
            [("x".to_string(), "alice".to_string()), ("y".to_string(), "b1".to_string())]
                .into_iter()
                .collect();
        let substituted = substitute(&formula, &env).unwrap();
        for state in all_states(&universe()) {
            prop_assert_eq!(
                eval(&gm, &state, &substituted).unwrap(),
                eval_env(&gm, &state, &formula, &env)
            );
        }
    }
}
