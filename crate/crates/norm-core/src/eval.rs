//! Substitution and evaluation of formulas against a state.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::{Atom, Formula, Term};
use crate::ground::GroundModel;
use crate::model::{FactKind, GroundAtom, State};

/// Defects in evaluation inputs. Unreachable on models that passed
/// [`check_wellformed`](crate::check_wellformed) with ground, well-typed
/// formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown fact symbol `{0}`")]
    UnknownSymbol(String),
    #[error("fact `{symbol}` applied to {got} arguments, expected {expected}")]
    ArityMismatch { symbol: String, expected: usize, got: usize },
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
}

/// Replaces every variable by its constant from `binding`. The formula
/// structure is otherwise unchanged.
pub fn substitute(
    formula: &Formula,
    binding: &HashMap<String, String>,
) -> Result<Formula, EvalError> {
    Ok(match formula {
        Formula::Const(b) => Formula::Const(*b),
        Formula::Atom(atom) => Formula::Atom(substitute_atom(atom, binding)?),
        Formula::Not(g) => Formula::not(substitute(g, binding)?),
        Formula::And(l, r) => Formula::and(substitute(l, binding)?, substitute(r, binding)?),
        Formula::Or(l, r) => Formula::or(substitute(l, binding)?, substitute(r, binding)?),
        Formula::Implies(l, r) => {
            Formula::implies(substitute(l, binding)?, substitute(r, binding)?)
        }
    })
}

pub fn substitute_atom(
    atom: &Atom,
    binding: &HashMap<String, String>,
) -> Result<Atom, EvalError> {
    let args = atom
        .args
        .iter()
        .map(|term| match term {
            Term::Const(c) => Ok(Term::Const(c.clone())),
            Term::Var(v) => binding
                .get(v)
                .map(|c| Term::Const(c.clone()))
                .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Atom::new(atom.symbol.clone(), args))
}

/// A ground atom from a fully substituted [`Atom`].
pub fn ground_atom(atom: &Atom) -> Result<GroundAtom, EvalError> {
    let args = atom
        .args
        .iter()
        .map(|term| match term {
            Term::Const(c) => Ok(c.clone()),
            Term::Var(v) => Err(EvalError::UnboundVariable(v.clone())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroundAtom::new(atom.symbol.clone(), args))
}

/// Evaluates a ground formula in `state` under standard Boolean semantics.
///
/// An atomic atom holds iff it is in the state's fact set. A derived atom
/// holds iff its derivation formula, with the argument constants substituted
/// for the canonical parameters, evaluates to true; acyclicity of derivations
/// guarantees termination.
pub fn eval(gm: &GroundModel, state: &State, formula: &Formula) -> Result<bool, EvalError> {
    Ok(match formula {
        Formula::Const(b) => *b,
        Formula::Atom(atom) => eval_atom(gm, state, atom)?,
        Formula::Not(g) => !eval(gm, state, g)?,
        Formula::And(l, r) => eval(gm, state, l)? && eval(gm, state, r)?,
        Formula::Or(l, r) => eval(gm, state, l)? || eval(gm, state, r)?,
        Formula::Implies(l, r) => !eval(gm, state, l)? || eval(gm, state, r)?,
    })
}

pub(crate) fn eval_atom(gm: &GroundModel, state: &State, atom: &Atom) -> Result<bool, EvalError> {
    let symbol = gm
        .model()
        .fact(&atom.symbol)
        .ok_or_else(|| EvalError::UnknownSymbol(atom.symbol.clone()))?;
    if symbol.arity() != atom.args.len() {
        return Err(EvalError::ArityMismatch {
            symbol: atom.symbol.clone(),
            expected: symbol.arity(),
            got: atom.args.len(),
        });
    }
    match &symbol.kind {
        FactKind::Atomic => Ok(state.holds(&ground_atom(atom)?)),
        FactKind::Derived(body) => {
            let binding: HashMap<String, String> = symbol
                .canonical_params()
                .into_iter()
                .zip(atom.args.iter().map(|t| match t {
                    Term::Const(c) => Ok(c.clone()),
                    Term::Var(v) => Err(EvalError::UnboundVariable(v.clone())),
                }))
                .map(|(p, c)| c.map(|c| (p, c)))
                .collect::<Result<_, _>>()?;
            let expanded = substitute(body, &binding)?;
            eval(gm, state, &expanded)
        }
    }
}
