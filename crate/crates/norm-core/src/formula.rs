//! Boolean formulas over fact atoms.

use std::fmt;

/// An argument of a fact atom: either a frame parameter or an object constant.
///
/// Both are rendered with the same lexeme; which one an identifier denotes is
/// decided by the enclosing frame's parameter list when a formula is built.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fact atom: a fact symbol applied to argument terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub symbol: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { symbol: symbol.into(), args }
    }

    /// Variables occurring in the atom, in argument order.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }
}

/// Renders `name` or `name(a, b)`; shared by atoms, ground atoms, acts and duties.
pub(crate) fn write_call(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    args: &[impl fmt::Display],
) -> fmt::Result {
    f.write_str(name)?;
    if !args.is_empty() {
        write!(f, "(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_call(f, &self.symbol, &self.args)
    }
}

/// A Boolean formula over fact atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn truth(value: bool) -> Self {
        Formula::Const(value)
    }

    pub fn atom(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(symbol, args))
    }

    pub fn not(inner: Formula) -> Self {
        Formula::Not(Box::new(inner))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    /// All atoms of the formula, left to right.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(a) => out.push(a),
            Formula::Not(g) => g.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Distinct variable names in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for atom in self.atoms() {
            for v in atom.variables() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.variables().is_empty()
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Const(_) | Formula::Atom(_) => 4,
            Formula::Not(_) => 3,
            Formula::And(_, _) => 2,
            Formula::Or(_, _) => 1,
            Formula::Implies(_, _) => 0,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Const(true) => write!(f, "true")?,
            Formula::Const(false) => write!(f, "false")?,
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Not(g) => {
                write!(f, "not ")?;
                g.fmt_prec(f, 3)?;
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " and ")?;
                r.fmt_prec(f, 3)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, " or ")?;
                r.fmt_prec(f, 2)?;
            }
            Formula::Implies(l, r) => {
                // right-associative
                l.fmt_prec(f, 1)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 0)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: &str) -> Term {
        Term::Var(n.into())
    }

    fn cst(n: &str) -> Term {
        Term::Const(n.into())
    }

    #[test]
    fn display_respects_precedence() {
        let f = Formula::implies(
            Formula::or(
                Formula::atom("a", vec![]),
                Formula::and(Formula::atom("b", vec![]), Formula::not(Formula::atom("c", vec![]))),
            ),
            Formula::atom("d", vec![var("x")]),
        );
        assert_eq!(f.to_string(), "a or b and not c -> d(x)");

        let g = Formula::and(
            Formula::or(Formula::atom("a", vec![]), Formula::atom("b", vec![])),
            Formula::atom("c", vec![]),
        );
        assert_eq!(g.to_string(), "(a or b) and c");
    }

    #[test]
    fn implication_is_right_associative_in_display() {
        let chain = Formula::implies(
            Formula::atom("a", vec![]),
            Formula::implies(Formula::atom("b", vec![]), Formula::atom("c", vec![])),
        );
        assert_eq!(chain.to_string(), "a -> b -> c");
        let left = Formula::implies(
            Formula::implies(Formula::atom("a", vec![]), Formula::atom("b", vec![])),
            Formula::atom("c", vec![]),
        );
        assert_eq!(left.to_string(), "(a -> b) -> c");
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        let f = Formula::and(
            Formula::atom("p", vec![var("y"), cst("k")]),
            Formula::atom("q", vec![var("x"), var("y")]),
        );
        assert_eq!(f.variables(), vec!["y", "x"]);
        assert!(!f.is_ground());
    }
}
