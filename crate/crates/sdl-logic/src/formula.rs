//! Propositional deontic formulas: Boolean connectives plus the obligation
//! operator `O` and its dual permission `P`.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SdlFormula {
    Atom(String),
    Not(Box<SdlFormula>),
    And(Box<SdlFormula>, Box<SdlFormula>),
    Or(Box<SdlFormula>, Box<SdlFormula>),
    Implies(Box<SdlFormula>, Box<SdlFormula>),
    /// O(φ): φ is obligatory.
    Oblig(Box<SdlFormula>),
    /// P(φ): φ is permitted, definitionally ¬O(¬φ).
    Perm(Box<SdlFormula>),
}

impl SdlFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        SdlFormula::Atom(name.into())
    }

    pub fn not(inner: SdlFormula) -> Self {
        SdlFormula::Not(Box::new(inner))
    }

    pub fn and(lhs: SdlFormula, rhs: SdlFormula) -> Self {
        SdlFormula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: SdlFormula, rhs: SdlFormula) -> Self {
        SdlFormula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: SdlFormula, rhs: SdlFormula) -> Self {
        SdlFormula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn oblig(inner: SdlFormula) -> Self {
        SdlFormula::Oblig(Box::new(inner))
    }

    pub fn perm(inner: SdlFormula) -> Self {
        SdlFormula::Perm(Box::new(inner))
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            SdlFormula::Atom(a) => {
                out.insert(a.clone());
            }
            SdlFormula::Not(g) | SdlFormula::Oblig(g) | SdlFormula::Perm(g) => {
                g.collect_atoms(out)
            }
            SdlFormula::And(l, r) | SdlFormula::Or(l, r) | SdlFormula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Maximum nesting depth of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            SdlFormula::Atom(_) => 0,
            SdlFormula::Not(g) => g.modal_depth(),
            SdlFormula::And(l, r) | SdlFormula::Or(l, r) | SdlFormula::Implies(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            SdlFormula::Oblig(g) | SdlFormula::Perm(g) => 1 + g.modal_depth(),
        }
    }

    /// Number of connectives (every non-atom node).
    pub fn connectives(&self) -> usize {
        match self {
            SdlFormula::Atom(_) => 0,
            SdlFormula::Not(g) | SdlFormula::Oblig(g) | SdlFormula::Perm(g) => 1 + g.connectives(),
            SdlFormula::And(l, r) | SdlFormula::Or(l, r) | SdlFormula::Implies(l, r) => {
                1 + l.connectives() + r.connectives()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            SdlFormula::Atom(_) | SdlFormula::Oblig(_) | SdlFormula::Perm(_) => 4,
            SdlFormula::Not(_) => 3,
            SdlFormula::And(_, _) => 2,
            SdlFormula::Or(_, _) => 1,
            SdlFormula::Implies(_, _) => 0,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            SdlFormula::Atom(a) => write!(f, "{a}")?,
            SdlFormula::Not(g) => {
                write!(f, "~")?;
                g.fmt_prec(f, 3)?;
            }
            SdlFormula::And(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " & ")?;
                r.fmt_prec(f, 3)?;
            }
            SdlFormula::Or(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " | ")?;
                r.fmt_prec(f, 2)?;
            }
            SdlFormula::Implies(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 0)?;
            }
            SdlFormula::Oblig(g) => write!(f, "O({g})")?,
            SdlFormula::Perm(g) => write!(f, "P({g})")?,
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for SdlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Atoms of a whole formula set, sorted.
pub fn set_atoms(gamma: &[SdlFormula]) -> Vec<String> {
    let mut all = BTreeSet::new();
    for f in gamma {
        f.collect_atoms(&mut all);
    }
    all.into_iter().collect()
}

/// Maximum modal depth across a formula set.
pub fn set_modal_depth(gamma: &[SdlFormula]) -> usize {
    gamma.iter().map(|f| f.modal_depth()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_grammar_precedence() {
        let f = SdlFormula::implies(
            SdlFormula::not(SdlFormula::atom("r")),
            SdlFormula::oblig(SdlFormula::atom("p")),
        );
        assert_eq!(f.to_string(), "~r -> O(p)");

        let g = SdlFormula::oblig(SdlFormula::implies(
            SdlFormula::atom("r"),
            SdlFormula::not(SdlFormula::atom("p")),
        ));
        assert_eq!(g.to_string(), "O(r -> ~p)");

        let h = SdlFormula::and(
            SdlFormula::or(SdlFormula::atom("p"), SdlFormula::atom("q")),
            SdlFormula::atom("r"),
        );
        assert_eq!(h.to_string(), "(p | q) & r");
    }

    #[test]
    fn modal_depth_counts_nesting() {
        let f = SdlFormula::oblig(SdlFormula::perm(SdlFormula::atom("p")));
        assert_eq!(f.modal_depth(), 2);
        let g = SdlFormula::and(
            SdlFormula::oblig(SdlFormula::atom("p")),
            SdlFormula::oblig(SdlFormula::atom("q")),
        );
        assert_eq!(g.modal_depth(), 1);
    }
}
