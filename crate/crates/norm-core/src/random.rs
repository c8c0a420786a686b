//! Seeded generators for randomized testing.
//!
//! Generated models are always well-formed (modulo missing-source warnings)
//! and keep domains at size <= 2, which keeps ground state spaces small
//! enough for brute-force oracles.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::check::is_wellformed;
use crate::formula::{Atom, Formula, Term};
use crate::ground::GroundModel;
use crate::model::{ActFrame, DutyFrame, FactSymbol, GroundAct, GroundAtom, Model, ObjectDomain, Param};

/// A reproducible model for `seed`.
pub fn model_from_seed(seed: u64) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model(&mut rng)
}

pub fn random_model(rng: &mut impl Rng) -> Model {
    for _ in 0..64 {
        let model = generate(rng);
        if is_wellformed(&model) {
            return model;
        }
    }
    unreachable!("generator produced 64 ill-formed models in a row");
}

/// A trace of `len` acts sampled uniformly from the ground acts.
pub fn random_trace(rng: &mut impl Rng, gm: &GroundModel, len: usize) -> Vec<GroundAct> {
    (0..len)
        .filter_map(|_| gm.acts().choose(rng).cloned())
        .collect()
}

fn generate(rng: &mut impl Rng) -> Model {
    let mut model = Model::default();

    let n_domains = rng.gen_range(1..=2usize);
    let member_pools = [["a1", "a2"], ["b1", "b2"]];
    for i in 0..n_domains {
        let size = rng.gen_range(1..=2usize);
        model.domains.push(ObjectDomain::new(
            format!("D{}", i + 1),
            member_pools[i][..size].iter().map(|s| s.to_string()).collect(),
        ));
    }

    let n_facts = rng.gen_range(2..=4usize);
    for i in 0..n_facts {
        let arity = rng.gen_range(0..=2usize);
        let params = (0..arity).map(|_| pick_domain(rng, &model)).collect();
        model.facts.push(FactSymbol::atomic(format!("fact{}", i + 1), params));
    }
    if rng.gen_bool(0.5) {
        let arity = rng.gen_range(0..=1usize);
        let params: Vec<String> = (0..arity).map(|_| pick_domain(rng, &model)).collect();
        let canon = crate::model::canonical_param_names(&params);
        let vars: Vec<Param> = canon
            .iter()
            .zip(params.iter())
            .map(|(v, d)| Param::new(v.clone(), d.clone()))
            .collect();
        let body = random_formula(rng, &model, &vars, 2);
        let mut derived = FactSymbol::derived(format!("fact{}", n_facts + 1), params, body);
        if rng.gen_bool(0.5) {
            derived.sources = vec!["generated".to_string()];
        }
        model.facts.push(derived);
    }

    let n_acts = rng.gen_range(1..=4usize);
    let param_names = ["x", "y", "holder"];
    for i in 0..n_acts {
        let actor = Param::new("actor", pick_domain(rng, &model));
        let n_params = rng.gen_range(0..=2usize);
        let mut names = param_names;
        names.partial_shuffle(rng, n_params);
        let object_params: Vec<Param> = names[..n_params]
            .iter()
            .map(|n| Param::new(*n, pick_domain(rng, &model)))
            .collect();
        let all_params: Vec<Param> =
            std::iter::once(actor.clone()).chain(object_params.iter().cloned()).collect();
        let precondition = if rng.gen_bool(0.4) {
            Formula::Const(true)
        } else {
            random_formula(rng, &model, &all_params, 2)
        };
        let creates = random_effect_atoms(rng, &model, &all_params);
        let terminates = random_effect_atoms(rng, &model, &all_params);
        let sources =
            if rng.gen_bool(0.5) { vec![format!("rule {}", i + 1)] } else { Vec::new() };
        model.acts.push(ActFrame {
            name: format!("act{}", i + 1),
            actor,
            object_params,
            precondition,
            creates,
            terminates,
            sources,
        });
    }

    let n_duties = rng.gen_range(0..=2usize);
    for i in 0..n_duties {
        if let Some(duty) = random_duty(rng, &model, i) {
            model.duties.push(duty);
        }
    }

    for _ in 0..rng.gen_range(0..=2usize) {
        if let Some(atom) = random_ground_atom(rng, &model) {
            if !model.initial.contains(&atom) {
                model.initial.push(atom);
            }
        }
    }

    model
}

fn pick_domain(rng: &mut impl Rng, model: &Model) -> String {
    model.domains.choose(rng).expect("at least one domain").name.clone()
}

fn atomic_facts(model: &Model) -> Vec<&FactSymbol> {
    model.facts.iter().filter(|f| !f.is_derived()).collect()
}

/// An atom over `symbol` whose arguments are frame variables of the right
/// domain where available, otherwise constants.
fn atom_for(rng: &mut impl Rng, model: &Model, symbol: &FactSymbol, params: &[Param]) -> Atom {
    let args = symbol
        .params
        .iter()
        .map(|domain| {
            let candidates: Vec<&Param> =
                params.iter().filter(|p| &p.domain == domain).collect();
            if !candidates.is_empty() && rng.gen_bool(0.8) {
                Term::Var(candidates.choose(rng).unwrap().name.clone())
            } else {
                let members = &model.domain(domain).unwrap().members;
                Term::Const(members.choose(rng).unwrap().clone())
            }
        })
        .collect();
    Atom::new(symbol.name.clone(), args)
}

fn random_formula(rng: &mut impl Rng, model: &Model, params: &[Param], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        if model.facts.is_empty() || rng.gen_bool(0.1) {
            return Formula::Const(rng.gen_bool(0.8));
        }
        let symbol = model.facts.choose(rng).unwrap();
        return Formula::Atom(atom_for(rng, model, symbol, params));
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_formula(rng, model, params, depth - 1)),
        1 => Formula::and(
            random_formula(rng, model, params, depth - 1),
            random_formula(rng, model, params, depth - 1),
        ),
        2 => Formula::or(
            random_formula(rng, model, params, depth - 1),
            random_formula(rng, model, params, depth - 1),
        ),
        _ => Formula::implies(
            random_formula(rng, model, params, depth - 1),
            random_formula(rng, model, params, depth - 1),
        ),
    }
}

fn random_effect_atoms(rng: &mut impl Rng, model: &Model, params: &[Param]) -> Vec<Atom> {
    let atomics = atomic_facts(model);
    let mut out: Vec<Atom> = Vec::new();
    for _ in 0..rng.gen_range(0..=2usize) {
        let symbol = atomics.choose(rng).unwrap();
        let atom = atom_for(rng, model, symbol, params);
        if !out.contains(&atom) {
            out.push(atom);
        }
    }
    out
}

fn random_duty(rng: &mut impl Rng, model: &Model, index: usize) -> Option<DutyFrame> {
    let holder_domain = pick_domain(rng, model);
    // An act can bind `holder` via an explicit holder parameter or its actor.
    let compatible: Vec<&ActFrame> = model
        .acts
        .iter()
        .filter(|a| match a.param("holder") {
            Some(p) => p.domain == holder_domain,
            None => a.actor.domain == holder_domain,
        })
        .collect();
    if compatible.is_empty() {
        return None;
    }

    fn pick_role(rng: &mut impl Rng, compatible: &[&ActFrame]) -> Vec<String> {
        let n = rng.gen_range(1..=2usize.min(compatible.len()));
        let mut names: Vec<String> =
            compatible.choose_multiple(rng, n).map(|a| a.name.clone()).collect();
        names.dedup();
        names
    }
    let created_by = pick_role(rng, &compatible);
    let enforced_by = pick_role(rng, &compatible);
    let terminated_by = pick_role(rng, &compatible);

    // Extra parameters must bind by name and domain in every referenced act.
    let referenced: Vec<&&ActFrame> = compatible
        .iter()
        .filter(|a| {
            created_by.contains(&a.name)
                || enforced_by.contains(&a.name)
                || terminated_by.contains(&a.name)
        })
        .collect();
    let mut common: Vec<Param> = referenced
        .first()
        .map(|a| a.object_params.clone())
        .unwrap_or_default();
    common.retain(|p| {
        p.name != "holder"
            && referenced
                .iter()
                .all(|a| a.object_params.iter().any(|q| q.name == p.name && q.domain == p.domain))
    });
    let object_params = if !common.is_empty() && rng.gen_bool(0.6) {
        vec![common.choose(rng).unwrap().clone()]
    } else {
        Vec::new()
    };

    Some(DutyFrame {
        name: format!("duty{}", index + 1),
        holder: Param::new("holder", holder_domain),
        object_params,
        created_by,
        enforced_by,
        terminated_by,
        sources: if rng.gen_bool(0.5) { vec!["generated".to_string()] } else { Vec::new() },
    })
}

fn random_ground_atom(rng: &mut impl Rng, model: &Model) -> Option<GroundAtom> {
    let atomics = atomic_facts(model);
    let symbol = atomics.choose(rng)?;
    let args = symbol
        .params
        .iter()
        .map(|d| model.domain(d).unwrap().members.choose(rng).unwrap().clone())
        .collect();
    Some(GroundAtom::new(symbol.name.clone(), args))
}
