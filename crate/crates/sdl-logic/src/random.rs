//! Seeded random formulas for property tests: atom pool {p, q, r}, uniform
//! connective weights, at most 8 connectives and modal depth 2.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::formula::SdlFormula;

pub const ATOM_POOL: [&str; 3] = ["p", "q", "r"];
pub const MAX_CONNECTIVES: usize = 8;
pub const MAX_MODAL_DEPTH: usize = 2;

/// A reproducible formula set (1 to 3 members) for `seed`.
pub fn formula_set_from_seed(seed: u64) -> Vec<SdlFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| random_formula(&mut rng)).collect()
}

pub fn formula_from_seed(seed: u64) -> SdlFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng)
}

pub fn random_formula(rng: &mut impl Rng) -> SdlFormula {
    let budget = rng.gen_range(0..=MAX_CONNECTIVES);
    build(rng, budget, MAX_MODAL_DEPTH)
}

fn build(rng: &mut impl Rng, budget: usize, modal_budget: usize) -> SdlFormula {
    if budget == 0 {
        return SdlFormula::atom(*ATOM_POOL.choose(rng).unwrap());
    }
    let choices = if modal_budget > 0 { 6 } else { 4 };
    match rng.gen_range(0..choices) {
        0 => SdlFormula::not(build(rng, budget - 1, modal_budget)),
        1 => binary(rng, budget, modal_budget, SdlFormula::and),
        2 => binary(rng, budget, modal_budget, SdlFormula::or),
        3 => binary(rng, budget, modal_budget, SdlFormula::implies),
        4 => SdlFormula::oblig(build(rng, budget - 1, modal_budget - 1)),
        _ => SdlFormula::perm(build(rng, budget - 1, modal_budget - 1)),
    }
}

fn binary(
    rng: &mut impl Rng,
    budget: usize,
    modal_budget: usize,
    op: fn(SdlFormula, SdlFormula) -> SdlFormula,
) -> SdlFormula {
    let left_budget = rng.gen_range(0..budget);
    op(
        build(rng, left_budget, modal_budget),
        build(rng, budget - 1 - left_budget, modal_budget),
    )
}
