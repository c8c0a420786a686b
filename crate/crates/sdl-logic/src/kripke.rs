//! Kripke models and the satisfaction relation.

use std::collections::BTreeSet;
use std::fmt;

use crate::formula::SdlFormula;

/// A finite Kripke model. Worlds are `0..worlds`; world 0 is designated.
/// KD models are serial: every world has at least one successor. The K
/// configuration of the prover may return non-serial witnesses;
/// [`KripkeModel::is_serial`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pub worlds: usize,
    /// Successor lists, ascending, one per world.
    pub accessibility: Vec<Vec<usize>>,
    /// True atoms per world.
    pub valuation: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    pub fn designated(&self) -> usize {
        0
    }

    pub fn is_serial(&self) -> bool {
        self.accessibility.iter().all(|succ| !succ.is_empty())
    }

    pub fn holds_at(&self, world: usize, formula: &SdlFormula) -> bool {
        match formula {
            SdlFormula::Atom(a) => self.valuation[world].contains(a),
            SdlFormula::Not(g) => !self.holds_at(world, g),
            SdlFormula::And(l, r) => self.holds_at(world, l) && self.holds_at(world, r),
            SdlFormula::Or(l, r) => self.holds_at(world, l) || self.holds_at(world, r),
            SdlFormula::Implies(l, r) => !self.holds_at(world, l) || self.holds_at(world, r),
            SdlFormula::Oblig(g) => {
                self.accessibility[world].iter().all(|&v| self.holds_at(v, g))
            }
            SdlFormula::Perm(g) => {
                self.accessibility[world].iter().any(|&v| self.holds_at(v, g))
            }
        }
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in 0..self.worlds {
            let succ: Vec<String> = self.accessibility[w].iter().map(|v| format!("w{v}")).collect();
            let atoms: Vec<&str> = self.valuation[w].iter().map(|s| s.as_str()).collect();
            writeln!(f, "w{w} -> {{{}}}  {{{}}}", succ.join(", "), atoms.join(", "))?;
        }
        Ok(())
    }
}

/// True iff every formula of `gamma` holds at the designated world.
pub fn check_model(model: &KripkeModel, gamma: &[SdlFormula]) -> bool {
    gamma.iter().all(|f| model.holds_at(model.designated(), f))
}
