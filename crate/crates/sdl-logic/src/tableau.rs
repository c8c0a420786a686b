//! Labeled tableau for propositional KD (and plain K via configuration).
//!
//! Rules: the propositional α/β rules per world; `O`-formulas propagate to
//! every successor; each `~O(φ)` opens a fresh successor carrying `~φ`; under
//! the D condition, a world holding `O`-formulas but no successor gets one.
//! Fresh worlds strip one modal level, so the tree is bounded by the modal
//! depth of the input and needs no loop check. The node budget turns runaway
//! inputs into an explicit error, never a wrong verdict.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::formula::SdlFormula;
use crate::kripke::{check_model, KripkeModel};
use crate::normalize::{negate_nnf, normalize};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct TableauConfig {
    /// Apply the seriality rule (KD). Without it the prover decides plain K.
    pub serial: bool,
    /// Rule applications (including world creation) before giving up.
    pub node_budget: usize,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig { serial: true, node_budget: DEFAULT_NODE_BUDGET }
    }
}

impl TableauConfig {
    pub fn kd() -> Self {
        Self::default()
    }

    pub fn k() -> Self {
        TableauConfig { serial: false, ..Self::default() }
    }

    pub fn with_budget(mut self, node_budget: usize) -> Self {
        self.node_budget = node_budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("tableau exceeded its budget of {0} rule applications")]
    BudgetExceeded(usize),
}

/// The rule applications of one closed branch, ending in its clash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedBranch {
    pub steps: Vec<String>,
}

/// One closed branch per leaf of the refutation tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub branches: Vec<ClosedBranch>,
}

impl Certificate {
    /// Total number of recorded rule applications.
    pub fn size(&self) -> usize {
        self.branches.iter().map(|b| b.steps.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableauResult {
    Satisfiable(KripkeModel),
    Unsatisfiable(Certificate),
}

impl TableauResult {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, TableauResult::Satisfiable(_))
    }

    pub fn model(&self) -> Option<&KripkeModel> {
        match self {
            TableauResult::Satisfiable(m) => Some(m),
            TableauResult::Unsatisfiable(_) => None,
        }
    }
}

struct Budget {
    spent: usize,
    cap: usize,
}

impl Budget {
    fn spend(&mut self) -> Result<(), TableauError> {
        self.spent += 1;
        if self.spent > self.cap {
            Err(TableauError::BudgetExceeded(self.cap))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone)]
struct Branch {
    /// (atom, polarity) literals per world.
    literals: Vec<HashSet<(String, bool)>>,
    /// Registered `O`-bodies per world.
    boxes: Vec<Vec<SdlFormula>>,
    succs: Vec<Vec<usize>>,
    pending: VecDeque<(usize, SdlFormula)>,
    steps: Vec<String>,
}

impl Branch {
    fn new() -> Self {
        Branch {
            literals: vec![HashSet::new()],
            boxes: vec![Vec::new()],
            succs: vec![Vec::new()],
            pending: VecDeque::new(),
            steps: Vec::new(),
        }
    }

    fn new_successor(&mut self, of: usize) -> usize {
        let id = self.literals.len();
        self.literals.push(HashSet::new());
        self.boxes.push(Vec::new());
        self.succs.push(Vec::new());
        self.succs[of].push(id);
        // Everything obligatory at `of` holds at the new successor.
        for body in self.boxes[of].clone() {
            self.pending.push_back((id, body));
        }
        id
    }

    /// Inserts a literal; false means the branch clashed.
    fn assert_literal(&mut self, world: usize, atom: String, positive: bool) -> bool {
        if self.literals[world].contains(&(atom.clone(), !positive)) {
            self.steps.push(format!("w{world}: clash on {atom}"));
            return false;
        }
        self.literals[world].insert((atom, positive));
        true
    }

    fn extract_model(&self, serial: bool) -> KripkeModel {
        let worlds = self.literals.len();
        let mut accessibility = self.succs.clone();
        if serial {
            // Successor-less worlds hold no obligations here (the seriality
            // rule ran), so a self-loop is harmless and keeps the model serial.
            for (w, succ) in accessibility.iter_mut().enumerate() {
                if succ.is_empty() {
                    succ.push(w);
                }
            }
        }
        for succ in &mut accessibility {
            succ.sort_unstable();
            succ.dedup();
        }
        let valuation = self
            .literals
            .iter()
            .map(|lits| {
                lits.iter()
                    .filter(|(_, positive)| *positive)
                    .map(|(atom, _)| atom.clone())
                    .collect()
            })
            .collect();
        KripkeModel { worlds, accessibility, valuation }
    }
}

/// Decides satisfiability of `gamma` at the designated world. Sound and
/// complete for KD (or K when seriality is off): unsatisfiable exactly when
/// no (serial) Kripke model satisfies all of `gamma` there.
pub fn consistent(
    gamma: &[SdlFormula],
    config: &TableauConfig,
) -> Result<TableauResult, TableauError> {
    let mut branch = Branch::new();
    for f in gamma {
        branch.pending.push_back((0, normalize(f)));
    }
    let mut budget = Budget { spent: 0, cap: config.node_budget };
    let mut closed = Vec::new();
    match search(branch, &mut budget, config.serial, &mut closed)? {
        Some(model) => {
            debug_assert!(check_model(&model, gamma), "tableau witness failed model check");
            Ok(TableauResult::Satisfiable(model))
        }
        None => Ok(TableauResult::Unsatisfiable(Certificate { branches: closed })),
    }
}

/// Γ ⊨ φ iff Γ ∪ {¬φ} is unsatisfiable.
pub fn entails(
    gamma: &[SdlFormula],
    phi: &SdlFormula,
    config: &TableauConfig,
) -> Result<bool, TableauError> {
    let mut set: Vec<SdlFormula> = gamma.to_vec();
    set.push(SdlFormula::not(phi.clone()));
    Ok(!consistent(&set, config)?.is_satisfiable())
}

fn search(
    mut branch: Branch,
    budget: &mut Budget,
    serial: bool,
    closed: &mut Vec<ClosedBranch>,
) -> Result<Option<KripkeModel>, TableauError> {
    loop {
        while let Some((world, formula)) = branch.pending.pop_front() {
            budget.spend()?;
            match formula {
                SdlFormula::Atom(atom) => {
                    branch.steps.push(format!("w{world}: {atom} [literal]"));
                    if !branch.assert_literal(world, atom, true) {
                        closed.push(ClosedBranch { steps: branch.steps });
                        return Ok(None);
                    }
                }
                SdlFormula::And(l, r) => {
                    branch.steps.push(format!("w{world}: {l} & {r} [and]"));
                    branch.pending.push_back((world, *l));
                    branch.pending.push_back((world, *r));
                }
                SdlFormula::Or(l, r) => {
                    let mut left = branch.clone();
                    left.steps.push(format!("w{world}: {l} | {r} [split left]"));
                    left.pending.push_back((world, (*l).clone()));
                    if let Some(model) = search(left, budget, serial, closed)? {
                        return Ok(Some(model));
                    }
                    branch.steps.push(format!("w{world}: {l} | {r} [split right]"));
                    branch.pending.push_back((world, *r));
                }
                SdlFormula::Oblig(body) => {
                    branch.steps.push(format!("w{world}: O({body}) [box]"));
                    for v in branch.succs[world].clone() {
                        branch.pending.push_back((v, (*body).clone()));
                    }
                    branch.boxes[world].push(*body);
                }
                SdlFormula::Not(inner) => match *inner {
                    SdlFormula::Atom(atom) => {
                        branch.steps.push(format!("w{world}: ~{atom} [literal]"));
                        if !branch.assert_literal(world, atom, false) {
                            closed.push(ClosedBranch { steps: branch.steps });
                            return Ok(None);
                        }
                    }
                    SdlFormula::Oblig(body) => {
                        budget.spend()?;
                        branch.steps.push(format!("w{world}: ~O({body}) [diamond]"));
                        let v = branch.new_successor(world);
                        branch.pending.push_back((v, negate_nnf(&body)));
                    }
                    other => {
                        // Inputs are normalized; renormalize rather than trust.
                        branch.pending.push_back((world, normalize(&SdlFormula::not(other))));
                    }
                },
                other @ (SdlFormula::Implies(_, _) | SdlFormula::Perm(_)) => {
                    branch.pending.push_back((world, normalize(&other)));
                }
            }
        }

        if serial {
            // D: every world with obligations needs some successor.
            let starving: Vec<usize> = (0..branch.literals.len())
                .filter(|&w| !branch.boxes[w].is_empty() && branch.succs[w].is_empty())
                .collect();
            if !starving.is_empty() {
                for w in starving {
                    budget.spend()?;
                    branch.steps.push(format!("w{w}: [seriality]"));
                    branch.new_successor(w);
                }
                continue;
            }
        }
        return Ok(Some(branch.extract_model(serial)));
    }
}
