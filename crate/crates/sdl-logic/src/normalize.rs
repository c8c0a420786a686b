//! Negation normal form with `P` and `->` eliminated.
//!
//! After [`normalize`], a formula contains only atoms, `~`, `&`, `|` and `O`,
//! with negation applied to atoms or directly to `O`-formulas; `~O(φ)` is the
//! diamond the tableau expands. The result is logically equivalent to the
//! input.

use crate::formula::SdlFormula;

pub fn normalize(formula: &SdlFormula) -> SdlFormula {
    nnf(formula, true)
}

fn nnf(formula: &SdlFormula, positive: bool) -> SdlFormula {
    match (formula, positive) {
        (SdlFormula::Atom(a), true) => SdlFormula::atom(a.clone()),
        (SdlFormula::Atom(a), false) => SdlFormula::not(SdlFormula::atom(a.clone())),
        (SdlFormula::Not(g), pol) => nnf(g, !pol),
        (SdlFormula::And(l, r), true) => SdlFormula::and(nnf(l, true), nnf(r, true)),
        (SdlFormula::And(l, r), false) => SdlFormula::or(nnf(l, false), nnf(r, false)),
        (SdlFormula::Or(l, r), true) => SdlFormula::or(nnf(l, true), nnf(r, true)),
        (SdlFormula::Or(l, r), false) => SdlFormula::and(nnf(l, false), nnf(r, false)),
        (SdlFormula::Implies(l, r), true) => SdlFormula::or(nnf(l, false), nnf(r, true)),
        (SdlFormula::Implies(l, r), false) => SdlFormula::and(nnf(l, true), nnf(r, false)),
        (SdlFormula::Oblig(g), true) => SdlFormula::oblig(nnf(g, true)),
        (SdlFormula::Oblig(g), false) => SdlFormula::not(SdlFormula::oblig(nnf(g, true))),
        // P(φ) = ~O(~φ)
        (SdlFormula::Perm(g), true) => SdlFormula::not(SdlFormula::oblig(nnf(g, false))),
        (SdlFormula::Perm(g), false) => SdlFormula::oblig(nnf(g, false)),
    }
}

/// Negates a formula already in normal form, staying in normal form.
pub(crate) fn negate_nnf(formula: &SdlFormula) -> SdlFormula {
    nnf(formula, false)
}

/// True when only atoms, `~`, `&`, `|`, `O` occur, with `~` restricted to
/// atoms and `O`-formulas.
pub fn is_normal(formula: &SdlFormula) -> bool {
    match formula {
        SdlFormula::Atom(_) => true,
        SdlFormula::Not(g) => matches!(**g, SdlFormula::Atom(_) | SdlFormula::Oblig(_))
            && match &**g {
                SdlFormula::Oblig(inner) => is_normal(inner),
                _ => true,
            },
        SdlFormula::And(l, r) | SdlFormula::Or(l, r) => is_normal(l) && is_normal(r),
        SdlFormula::Oblig(g) => is_normal(g),
        SdlFormula::Implies(_, _) | SdlFormula::Perm(_) => false,
    }
}
