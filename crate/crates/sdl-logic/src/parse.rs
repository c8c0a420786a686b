//! Parser for the SDL formula grammar.
//!
//! Atoms are `[a-z][a-z0-9_]*`; operators `~`, `&`, `|`, `->`, `O(...)`,
//! `P(...)`; precedence `~` > `&` > `|` > `->`, implication right-associative.

use std::fmt;

use crate::formula::SdlFormula;

/// A positioned parse error. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdlDiagnostic {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SdlDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Atom(String),
    Oblig,
    Perm,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(a) => write!(f, "`{a}`"),
            Tok::Oblig => write!(f, "`O`"),
            Tok::Perm => write!(f, "`P`"),
            Tok::Tilde => write!(f, "`~`"),
            Tok::Amp => write!(f, "`&`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
        }
    }
}

fn lex(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, SdlDiagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        match chars[i] {
            ' ' | '\t' | '\r' => i += 1,
            '#' => break,
            '~' => {
                out.push((Tok::Tilde, col));
                i += 1;
            }
            '&' => {
                out.push((Tok::Amp, col));
                i += 1;
            }
            '|' => {
                out.push((Tok::Pipe, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Arrow, col));
                i += 2;
            }
            'O' => {
                out.push((Tok::Oblig, col));
                i += 1;
            }
            'P' => {
                out.push((Tok::Perm, col));
                i += 1;
            }
            'a'..='z' => {
                let start = i;
                while i < chars.len() && matches!(chars[i], 'a'..='z' | '0'..='9' | '_') {
                    i += 1;
                }
                out.push((Tok::Atom(chars[start..i].iter().collect()), start + 1));
            }
            other => {
                return Err(SdlDiagnostic {
                    message: format!("unexpected character `{other}`"),
                    line,
                    column: col,
                })
            }
        }
    }
    Ok(out)
}

struct P<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> P<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_column)
    }

    fn err(&self, message: impl Into<String>) -> SdlDiagnostic {
        SdlDiagnostic { message: message.into(), line: self.line, column: self.column() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SdlDiagnostic> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {tok}, found {t}"))),
            None => Err(self.err(format!("expected {tok}, found end of input"))),
        }
    }

    // implication, right-associative
    fn formula(&mut self) -> Result<SdlFormula, SdlDiagnostic> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            return Ok(SdlFormula::implies(lhs, self.formula()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<SdlFormula, SdlDiagnostic> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            lhs = SdlFormula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<SdlFormula, SdlDiagnostic> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            lhs = SdlFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<SdlFormula, SdlDiagnostic> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(SdlFormula::not(self.unary()?))
            }
            Some(Tok::Oblig) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(SdlFormula::oblig(inner))
            }
            Some(Tok::Perm) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(SdlFormula::perm(inner))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Atom(a)) => {
                let f = SdlFormula::atom(a.clone());
                self.pos += 1;
                Ok(f)
            }
            Some(t) => Err(self.err(format!("expected a formula, found {t}"))),
            None => Err(self.err("expected a formula, found end of input")),
        }
    }
}

/// Parses a single formula.
pub fn sdl_parse(text: &str) -> Result<SdlFormula, SdlDiagnostic> {
    parse_line(text, 1)
        .and_then(|f| f.ok_or(SdlDiagnostic { message: "expected a formula".into(), line: 1, column: 1 }))
}

fn parse_line(text: &str, line: usize) -> Result<Option<SdlFormula>, SdlDiagnostic> {
    let toks = lex(text, line)?;
    if toks.is_empty() {
        return Ok(None);
    }
    let end_column = text.chars().count() + 1;
    let mut p = P { toks: &toks, pos: 0, line, end_column };
    let formula = p.formula()?;
    if p.pos != toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(Some(formula))
}

/// Parses a formula file: one formula per line, `#` comments, blank lines
/// ignored. Returns all formulas or all diagnostics.
pub fn sdl_parse_set(text: &str) -> Result<Vec<SdlFormula>, Vec<SdlDiagnostic>> {
    let mut formulas = Vec::new();
    let mut diags = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        match parse_line(raw, idx + 1) {
            Ok(Some(f)) => formulas.push(f),
            Ok(None) => {}
            Err(d) => diags.push(d),
        }
    }
    if diags.is_empty() {
        Ok(formulas)
    } else {
        Err(diags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(sdl_parse("O(r)").unwrap(), SdlFormula::oblig(SdlFormula::atom("r")));
        assert_eq!(
            sdl_parse("~r -> O(p)").unwrap(),
            SdlFormula::implies(
                SdlFormula::not(SdlFormula::atom("r")),
                SdlFormula::oblig(SdlFormula::atom("p"))
            )
        );
        assert_eq!(
            sdl_parse("O(r -> ~p)").unwrap(),
            SdlFormula::oblig(SdlFormula::implies(
                SdlFormula::atom("r"),
                SdlFormula::not(SdlFormula::atom("p"))
            ))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            sdl_parse("~p & q | r -> s").unwrap().to_string(),
            "~p & q | r -> s"
        );
        // -> is right-associative
        assert_eq!(
            sdl_parse("p -> q -> r").unwrap(),
            SdlFormula::implies(
                SdlFormula::atom("p"),
                SdlFormula::implies(SdlFormula::atom("q"), SdlFormula::atom("r"))
            )
        );
    }

    #[test]
    fn display_round_trips() {
        for text in ["O(r)", "O(r -> ~p)", "~r -> O(p)", "P(p & q) | ~O(r)", "(p -> q) -> r"] {
            let f = sdl_parse(text).unwrap();
            assert_eq!(sdl_parse(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = sdl_parse("O(p").unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        let err = sdl_parse("p &").unwrap_err();
        assert_eq!(err.line, 1);
        let err = sdl_parse("p ? q").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
    }

    #[test]
    fn set_files_skip_comments_and_report_lines() {
        let text = "# header\nO(r)\n\n~r\n";
        let set = sdl_parse_set(text).unwrap();
        assert_eq!(set.len(), 2);

        let errs = sdl_parse_set("O(r)\nO(p\n").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].line, 2);
    }
}
