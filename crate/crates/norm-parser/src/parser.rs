//! Recursive-descent parser for the model and trace formats.
//!
//! Parsing is total: any byte sequence yields either a model (possibly with
//! warnings) or positioned diagnostics, never a panic. Name resolution of
//! domains, fact symbols (with arity) and acts happens here; deeper semantic
//! checks (typing, cycles, duty binding) live in `norm_core::check_wellformed`.

use norm_core::{
    canonical_param_names, ActFrame, Atom, DutyFrame, FactKind, FactSymbol, Formula, GroundAct,
    GroundAtom, Model, ObjectDomain, Param, Term,
};

use crate::lexer::{lex, Token, TokenKind};
use crate::{Diagnostic, Trace};

/// Clause keywords; `IDENT ":"` with one of these ends a formula.
const CLAUSE_KEYWORDS: [&str; 7] =
    ["pre", "creates", "terminates", "source", "created-by", "enforced-by", "terminated-by"];

pub fn parse_model(text: &str) -> Result<(Model, Vec<Diagnostic>), Vec<Diagnostic>> {
    let (tokens, mut diags) = lex(text);
    let mut parser = Parser { tokens: &tokens, pos: 0, diags: Vec::new(), refs: Vec::new() };
    let model = parser.model();
    diags.append(&mut parser.diags);
    // Resolution over a partially parsed model would only cascade noise.
    if diags.iter().all(|d| !d.is_error()) {
        resolve(&model, &parser.refs, &mut diags);
    }

    let mut warnings = Vec::new();
    if model.declaration_count() == 0 && model.initial.is_empty() {
        warnings.push(Diagnostic::warning("empty model", 1, 1));
    }

    if diags.iter().any(|d| d.is_error()) {
        diags.extend(warnings);
        Err(diags)
    } else {
        diags.extend(warnings);
        Ok((model, diags))
    }
}

pub fn parse_trace(text: &str, model: &Model) -> Result<Trace, Vec<Diagnostic>> {
    let (tokens, mut diags) = lex(text);
    let mut acts = Vec::new();

    let mut i = 0;
    while i < tokens.len() {
        let line = tokens[i].line;
        let mut end = i;
        while end < tokens.len() && tokens[end].line == line {
            end += 1;
        }
        parse_trace_line(&tokens[i..end], model, &mut acts, &mut diags);
        i = end;
    }

    if diags.iter().any(|d| d.is_error()) {
        Err(diags)
    } else {
        Ok(Trace { acts })
    }
}

/// One `act(c1, c2)` per line.
fn parse_trace_line(
    tokens: &[Token],
    model: &Model,
    acts: &mut Vec<GroundAct>,
    diags: &mut Vec<Diagnostic>,
) {
    let head = &tokens[0];
    let TokenKind::Ident(name) = &head.kind else {
        diags.push(Diagnostic::error("expected an act name", head.line, head.column));
        return;
    };

    let mut args = Vec::new();
    let mut rest = &tokens[1..];
    if let Some(open) = rest.first() {
        if open.kind != TokenKind::LParen {
            diags.push(Diagnostic::error("expected `(`", open.line, open.column));
            return;
        }
        rest = &rest[1..];
        loop {
            match rest.first() {
                Some(Token { kind: TokenKind::Ident(c), .. }) => {
                    args.push(c.clone());
                    rest = &rest[1..];
                }
                Some(t) => {
                    diags.push(Diagnostic::error("expected a constant", t.line, t.column));
                    return;
                }
                None => {
                    diags.push(Diagnostic::error("expected `)`", head.line, head.column));
                    return;
                }
            }
            match rest.first() {
                Some(Token { kind: TokenKind::Comma, .. }) => rest = &rest[1..],
                Some(Token { kind: TokenKind::RParen, .. }) => {
                    rest = &rest[1..];
                    break;
                }
                Some(t) => {
                    diags.push(Diagnostic::error("expected `,` or `)`", t.line, t.column));
                    return;
                }
                None => {
                    diags.push(Diagnostic::error("expected `)`", head.line, head.column));
                    return;
                }
            }
        }
    }
    if let Some(extra) = rest.first() {
        diags.push(Diagnostic::error("unexpected trailing input", extra.line, extra.column));
        return;
    }

    let Some(frame) = model.act(name) else {
        diags.push(Diagnostic::error(
            format!("unknown act `{name}`"),
            head.line,
            head.column,
        ));
        return;
    };
    if frame.arity() != args.len() {
        diags.push(Diagnostic::error(
            format!("act `{name}` takes {} arguments, found {}", frame.arity(), args.len()),
            head.line,
            head.column,
        ));
        return;
    }
    for (constant, param) in args.iter().zip(frame.params()) {
        let known = model.domain(&param.domain).is_some_and(|d| d.contains(constant));
        if !known {
            diags.push(Diagnostic::error(
                format!(
                    "unknown constant `{constant}` for parameter `{}: {}`",
                    param.name, param.domain
                ),
                head.line,
                head.column,
            ));
            return;
        }
    }
    acts.push(GroundAct::new(name.clone(), args));
}

/// A name reference to resolve once the whole model is known.
enum PendingRef {
    Domain { name: String, line: usize, column: usize },
    Fact { symbol: String, arity: usize, line: usize, column: usize },
    Act { name: String, line: usize, column: usize },
}

fn resolve(model: &Model, refs: &[PendingRef], diags: &mut Vec<Diagnostic>) {
    for r in refs {
        match r {
            PendingRef::Domain { name, line, column } => {
                if model.domain(name).is_none() {
                    diags.push(Diagnostic::error(format!("unknown domain `{name}`"), *line, *column));
                }
            }
            PendingRef::Fact { symbol, arity, line, column } => match model.fact(symbol) {
                None => diags.push(Diagnostic::error(
                    format!("unknown fact `{symbol}`"),
                    *line,
                    *column,
                )),
                Some(f) if f.arity() != *arity => diags.push(Diagnostic::error(
                    format!("fact `{symbol}` takes {} arguments, found {arity}", f.arity()),
                    *line,
                    *column,
                )),
                Some(_) => {}
            },
            PendingRef::Act { name, line, column } => {
                if model.act(name).is_none() {
                    diags.push(Diagnostic::error(format!("unknown act `{name}`"), *line, *column));
                }
            }
        }
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    diags: Vec<Diagnostic>,
    refs: Vec<PendingRef>,
}

/// Declaration parse failure; the diagnostic is already recorded.
struct Bail;

type Parsed<T> = Result<T, Bail>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + offset)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn last_position(&self) -> (usize, usize) {
        self.tokens
            .last()
            .map(|t| (t.line, t.column))
            .unwrap_or((1, 1))
    }

    fn error_here(&mut self, message: impl Into<String>) -> Bail {
        let (line, column) = self
            .peek()
            .map(|t| (t.line, t.column))
            .unwrap_or_else(|| self.last_position());
        self.diags.push(Diagnostic::error(message, line, column));
        Bail
    }

    fn expect(&mut self, kind: TokenKind) -> Parsed<&'a Token> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.next().unwrap()),
            Some(t) => {
                let msg = format!("expected {kind}, found {}", t.kind);
                Err(self.error_here(msg))
            }
            None => Err(self.error_here(format!("expected {kind}, found end of input"))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Parsed<(String, usize, usize)> {
        match self.peek() {
            Some(Token { kind: TokenKind::Ident(n), line, column }) => {
                let out = (n.clone(), *line, *column);
                self.next();
                Ok(out)
            }
            Some(t) => {
                let msg = format!("expected {what}, found {}", t.kind);
                Err(self.error_here(msg))
            }
            None => Err(self.error_here(format!("expected {what}, found end of input"))),
        }
    }

    fn expect_domain_name(&mut self) -> Parsed<String> {
        match self.peek() {
            Some(Token { kind: TokenKind::UpperIdent(n), line, column }) => {
                self.refs.push(PendingRef::Domain {
                    name: n.clone(),
                    line: *line,
                    column: *column,
                });
                let out = n.clone();
                self.next();
                Ok(out)
            }
            Some(t) => {
                let msg = format!("expected a domain name, found {}", t.kind);
                Err(self.error_here(msg))
            }
            None => Err(self.error_here("expected a domain name, found end of input")),
        }
    }

    /// True at a token that starts a new declaration (column 1, later line).
    fn at_boundary(&self, decl_line: usize) -> bool {
        match self.peek() {
            None => true,
            Some(t) => t.column == 1 && t.line > decl_line,
        }
    }

    fn skip_declaration(&mut self, decl_line: usize) {
        while !self.at_boundary(decl_line) {
            self.pos += 1;
        }
    }

    fn model(&mut self) -> Model {
        let mut model = Model::default();
        while let Some(head) = self.peek() {
            let decl_line = head.line;
            if head.column != 1 {
                self.diags.push(Diagnostic::error(
                    "declarations must start at column 1",
                    head.line,
                    head.column,
                ));
                self.skip_declaration(decl_line);
                continue;
            }
            let result = match &head.kind {
                TokenKind::UpperIdent(k) if k == "Domain" => self.domain_decl(&mut model),
                TokenKind::UpperIdent(k) if k == "Fact" => self.fact_decl(&mut model),
                TokenKind::UpperIdent(k) if k == "Act" => self.act_decl(&mut model),
                TokenKind::UpperIdent(k) if k == "Duty" => self.duty_decl(&mut model),
                TokenKind::UpperIdent(k) if k == "Init" => self.init_decl(&mut model),
                other => {
                    let msg =
                        format!("expected `Domain`, `Fact`, `Act`, `Duty` or `Init`, found {other}");
                    Err(self.error_here(msg))
                }
            };
            match result {
                Ok(()) if self.at_boundary(decl_line) => {}
                Ok(()) => {
                    let _ = self.error_here("unexpected input after declaration");
                    self.skip_declaration(decl_line);
                }
                Err(Bail) => self.skip_declaration(decl_line),
            }
        }
        model
    }

    fn domain_decl(&mut self, model: &mut Model) -> Parsed<()> {
        self.next(); // Domain
        let name = match self.peek() {
            Some(Token { kind: TokenKind::UpperIdent(n), .. }) => {
                let n = n.clone();
                self.next();
                n
            }
            _ => return Err(self.error_here("expected a domain name")),
        };
        self.expect(TokenKind::Equals)?;
        let mut members = vec![self.expect_ident("an object constant")?.0];
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
            self.next();
            members.push(self.expect_ident("an object constant")?.0);
        }
        model.domains.push(ObjectDomain::new(name, members));
        Ok(())
    }

    fn fact_decl(&mut self, model: &mut Model) -> Parsed<()> {
        let decl_line = self.peek().unwrap().line;
        self.next(); // Fact
        let (name, _, _) = self.expect_ident("a fact name")?;

        let mut params = Vec::new();
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::LParen)) {
            self.next();
            params.push(self.expect_domain_name()?);
            while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
                self.next();
                params.push(self.expect_domain_name()?);
            }
            self.expect(TokenKind::RParen)?;
        }

        let mut kind = FactKind::Atomic;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Equals)) {
            self.next();
            // The body refers to the parameters by their canonical names.
            let vars = canonical_param_names(&params);
            kind = FactKind::Derived(self.formula(decl_line, &vars)?);
        }
        let sources = self.source_clause(decl_line)?;
        model.facts.push(FactSymbol { name, params, kind, sources });
        Ok(())
    }

    fn act_decl(&mut self, model: &mut Model) -> Parsed<()> {
        let decl_line = self.peek().unwrap().line;
        self.next(); // Act
        let (name, _, _) = self.expect_ident("an act name")?;
        let (actor, object_params) = self.param_list("actor")?;

        let vars: Vec<String> = std::iter::once(actor.name.clone())
            .chain(object_params.iter().map(|p| p.name.clone()))
            .collect();

        let mut precondition = Formula::Const(true);
        let mut creates = Vec::new();
        let mut terminates = Vec::new();
        let mut sources = Vec::new();
        let mut seen: Vec<&str> = Vec::new();
        while let Some(clause) = self.clause_keyword(decl_line) {
            if seen.contains(&clause) {
                return Err(self.error_here(format!("duplicate `{clause}` clause")));
            }
            match clause {
                "pre" => {
                    self.next();
                    self.next();
                    precondition = self.formula(decl_line, &vars)?;
                    seen.push("pre");
                }
                "creates" => {
                    self.next();
                    self.next();
                    creates = self.atom_list(&vars)?;
                    seen.push("creates");
                }
                "terminates" => {
                    self.next();
                    self.next();
                    terminates = self.atom_list(&vars)?;
                    seen.push("terminates");
                }
                "source" => {
                    sources = self.source_clause(decl_line)?;
                    seen.push("source");
                }
                other => {
                    return Err(self.error_here(format!("clause `{other}` is not valid in an act")))
                }
            }
        }
        model.acts.push(ActFrame {
            name,
            actor,
            object_params,
            precondition,
            creates,
            terminates,
            sources,
        });
        Ok(())
    }

    fn duty_decl(&mut self, model: &mut Model) -> Parsed<()> {
        let decl_line = self.peek().unwrap().line;
        self.next(); // Duty
        let (name, name_line, name_col) = self.expect_ident("a duty name")?;
        let (holder, object_params) = self.param_list("holder")?;

        let mut created_by = Vec::new();
        let mut enforced_by = Vec::new();
        let mut terminated_by = Vec::new();
        let mut sources = Vec::new();
        let mut seen: Vec<&str> = Vec::new();
        while let Some(clause) = self.clause_keyword(decl_line) {
            if seen.contains(&clause) {
                return Err(self.error_here(format!("duplicate `{clause}` clause")));
            }
            match clause {
                "created-by" => {
                    self.next();
                    self.next();
                    created_by = self.act_name_list()?;
                    seen.push("created-by");
                }
                "enforced-by" => {
                    self.next();
                    self.next();
                    enforced_by = self.act_name_list()?;
                    seen.push("enforced-by");
                }
                "terminated-by" => {
                    self.next();
                    self.next();
                    terminated_by = self.act_name_list()?;
                    seen.push("terminated-by");
                }
                "source" => {
                    sources = self.source_clause(decl_line)?;
                    seen.push("source");
                }
                other => {
                    return Err(self.error_here(format!("clause `{other}` is not valid in a duty")))
                }
            }
        }
        for (clause, list) in [
            ("created-by", &created_by),
            ("enforced-by", &enforced_by),
            ("terminated-by", &terminated_by),
        ] {
            if list.is_empty() {
                self.diags.push(Diagnostic::error(
                    format!("duty `{name}` is missing its `{clause}` clause"),
                    name_line,
                    name_col,
                ));
                return Err(Bail);
            }
        }
        model.duties.push(DutyFrame {
            name,
            holder,
            object_params,
            created_by,
            enforced_by,
            terminated_by,
            sources,
        });
        Ok(())
    }

    fn init_decl(&mut self, model: &mut Model) -> Parsed<()> {
        self.next(); // Init
        self.expect(TokenKind::Colon)?;
        // Init atoms have no parameters in scope, so every term is a constant.
        for atom in self.atom_list(&[])? {
            let args = atom.args.iter().map(|t| t.name().to_string()).collect();
            model.initial.push(GroundAtom::new(atom.symbol, args));
        }
        Ok(())
    }

    /// `( first ":" DOMAIN { "," IDENT ":" DOMAIN } )` where the first
    /// parameter must be literally named `first`.
    fn param_list(&mut self, first: &str) -> Parsed<(Param, Vec<Param>)> {
        self.expect(TokenKind::LParen)?;
        let (name, line, column) = self.expect_ident("a parameter name")?;
        if name != first {
            self.diags.push(Diagnostic::error(
                format!("the first parameter must be named `{first}`"),
                line,
                column,
            ));
            return Err(Bail);
        }
        self.expect(TokenKind::Colon)?;
        let lead = Param::new(first, self.expect_domain_name()?);

        let mut object_params = Vec::new();
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
            self.next();
            let (name, _, _) = self.expect_ident("a parameter name")?;
            self.expect(TokenKind::Colon)?;
            object_params.push(Param::new(name, self.expect_domain_name()?));
        }
        self.expect(TokenKind::RParen)?;
        Ok((lead, object_params))
    }

    /// The clause keyword at the cursor, when followed by `:` and still
    /// inside the current declaration.
    fn clause_keyword(&self, decl_line: usize) -> Option<&'static str> {
        if self.at_boundary(decl_line) {
            return None;
        }
        let Token { kind: TokenKind::Ident(name), .. } = self.peek()? else {
            return None;
        };
        if self.peek_at(1)?.kind != TokenKind::Colon {
            return None;
        }
        CLAUSE_KEYWORDS.iter().find(|k| *k == name).copied()
    }

    fn source_clause(&mut self, decl_line: usize) -> Parsed<Vec<String>> {
        if self.clause_keyword(decl_line) != Some("source") {
            return Ok(Vec::new());
        }
        self.next();
        self.next();
        let mut sources = vec![self.expect_str()?];
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
            self.next();
            sources.push(self.expect_str()?);
        }
        Ok(sources)
    }

    fn expect_str(&mut self) -> Parsed<String> {
        match self.peek() {
            Some(Token { kind: TokenKind::Str(s), .. }) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.error_here("expected a quoted string")),
        }
    }

    fn act_name_list(&mut self) -> Parsed<Vec<String>> {
        let (name, line, column) = self.expect_ident("an act name")?;
        self.refs.push(PendingRef::Act { name: name.clone(), line, column });
        let mut names = vec![name];
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
            self.next();
            let (name, line, column) = self.expect_ident("an act name")?;
            self.refs.push(PendingRef::Act { name: name.clone(), line, column });
            names.push(name);
        }
        Ok(names)
    }

    fn atom_list(&mut self, vars: &[String]) -> Parsed<Vec<Atom>> {
        let mut atoms = vec![self.atom(vars)?];
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
            self.next();
            atoms.push(self.atom(vars)?);
        }
        Ok(atoms)
    }

    /// Precedence climbing; `->` is right-associative and weakest.
    fn formula(&mut self, decl_line: usize, vars: &[String]) -> Parsed<Formula> {
        let lhs = self.formula_or(decl_line, vars)?;
        if self.formula_op(decl_line) == Some(FormulaOp::Implies) {
            self.next();
            let rhs = self.formula(decl_line, vars)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn formula_or(&mut self, decl_line: usize, vars: &[String]) -> Parsed<Formula> {
        let mut lhs = self.formula_and(decl_line, vars)?;
        while self.formula_op(decl_line) == Some(FormulaOp::Or) {
            self.next();
            lhs = Formula::or(lhs, self.formula_and(decl_line, vars)?);
        }
        Ok(lhs)
    }

    fn formula_and(&mut self, decl_line: usize, vars: &[String]) -> Parsed<Formula> {
        let mut lhs = self.formula_primary(decl_line, vars)?;
        while self.formula_op(decl_line) == Some(FormulaOp::And) {
            self.next();
            lhs = Formula::and(lhs, self.formula_primary(decl_line, vars)?);
        }
        Ok(lhs)
    }

    fn formula_op(&self, decl_line: usize) -> Option<FormulaOp> {
        if self.at_boundary(decl_line) || self.clause_keyword(decl_line).is_some() {
            return None;
        }
        match &self.peek()?.kind {
            TokenKind::Arrow => Some(FormulaOp::Implies),
            TokenKind::Ident(n) if n == "or" => Some(FormulaOp::Or),
            TokenKind::Ident(n) if n == "and" => Some(FormulaOp::And),
            _ => None,
        }
    }

    fn formula_primary(&mut self, decl_line: usize, vars: &[String]) -> Parsed<Formula> {
        if self.at_boundary(decl_line) || self.clause_keyword(decl_line).is_some() {
            return Err(self.error_here("expected a formula"));
        }
        match self.peek().map(|t| &t.kind) {
            Some(TokenKind::LParen) => {
                self.next();
                let inner = self.formula(decl_line, vars)?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            Some(TokenKind::Ident(n)) if n == "true" => {
                self.next();
                Ok(Formula::Const(true))
            }
            Some(TokenKind::Ident(n)) if n == "false" => {
                self.next();
                Ok(Formula::Const(false))
            }
            Some(TokenKind::Ident(n)) if n == "not" => {
                self.next();
                Ok(Formula::not(self.formula_primary(decl_line, vars)?))
            }
            Some(TokenKind::Ident(_)) => Ok(Formula::Atom(self.atom(vars)?)),
            _ => Err(self.error_here("expected a formula")),
        }
    }

    /// `IDENT [ "(" term { "," term } ")" ]`; a term is a variable when it
    /// names a parameter in scope, otherwise an object constant.
    fn atom(&mut self, vars: &[String]) -> Parsed<Atom> {
        let (symbol, line, column) = self.expect_ident("a fact name")?;
        let mut args = Vec::new();
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::LParen)) {
            self.next();
            loop {
                let (term, _, _) = self.expect_ident("a term")?;
                if vars.contains(&term) {
                    args.push(Term::Var(term));
                } else {
                    args.push(Term::Const(term));
                }
                match self.peek().map(|t| &t.kind) {
                    Some(TokenKind::Comma) => {
                        self.next();
                    }
                    Some(TokenKind::RParen) => {
                        self.next();
                        break;
                    }
                    _ => return Err(self.error_here("expected `,` or `)`")),
                }
            }
        }
        self.refs.push(PendingRef::Fact { symbol: symbol.clone(), arity: args.len(), line, column });
        Ok(Atom::new(symbol, args))
    }
}

#[derive(PartialEq)]
enum FormulaOp {
    And,
    Or,
    Implies,
}
