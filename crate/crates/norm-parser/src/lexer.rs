//! Tokenizer for the model and trace formats.

use std::fmt;

use crate::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// `[a-z][a-z0-9-]*`, shared by symbols, acts, duties and constants.
    Ident(String),
    /// `[A-Z][A-Za-z0-9]*`, domain names and declaration keywords.
    UpperIdent(String),
    /// A double-quoted string with `\"` and `\\` escapes.
    Str(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
    Arrow,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) | TokenKind::UpperIdent(s) => write!(f, "`{s}`"),
            TokenKind::Str(_) => write!(f, "string"),
            TokenKind::LParen => write!(f, "`(`"),
            TokenKind::RParen => write!(f, "`)`"),
            TokenKind::Comma => write!(f, "`,`"),
            TokenKind::Colon => write!(f, "`:`"),
            TokenKind::Equals => write!(f, "`=`"),
            TokenKind::Arrow => write!(f, "`->`"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Tokenizes the whole input. Never fails: bad characters become diagnostics
/// and are skipped.
pub(crate) fn lex(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1usize;
    let mut column = 1usize;

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let (tok_line, tok_col) = (line, column);
        match c {
            ' ' | '\t' | '\r' | '\n' => bump!(),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    bump!();
                }
            }
            '(' => {
                tokens.push(Token { kind: TokenKind::LParen, line: tok_line, column: tok_col });
                bump!();
            }
            ')' => {
                tokens.push(Token { kind: TokenKind::RParen, line: tok_line, column: tok_col });
                bump!();
            }
            ',' => {
                tokens.push(Token { kind: TokenKind::Comma, line: tok_line, column: tok_col });
                bump!();
            }
            ':' => {
                tokens.push(Token { kind: TokenKind::Colon, line: tok_line, column: tok_col });
                bump!();
            }
            '=' => {
                tokens.push(Token { kind: TokenKind::Equals, line: tok_line, column: tok_col });
                bump!();
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                tokens.push(Token { kind: TokenKind::Arrow, line: tok_line, column: tok_col });
                bump!();
                bump!();
            }
            '"' => {
                bump!();
                let mut value = String::new();
                let mut closed = false;
                while i < chars.len() && chars[i] != '\n' {
                    match chars[i] {
                        '"' => {
                            closed = true;
                            bump!();
                            break;
                        }
                        '\\' if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                            bump!();
                            value.push(chars[i]);
                            bump!();
                        }
                        other => {
                            value.push(other);
                            bump!();
                        }
                    }
                }
                if closed {
                    tokens.push(Token { kind: TokenKind::Str(value), line: tok_line, column: tok_col });
                } else {
                    diags.push(Diagnostic::error("unterminated string", tok_line, tok_col));
                }
            }
            'a'..='z' => {
                let mut name = String::new();
                while i < chars.len() {
                    match chars[i] {
                        // `->` ends an identifier so `a->b` lexes as three tokens.
                        '-' if chars.get(i + 1) == Some(&'>') => break,
                        'a'..='z' | '0'..='9' | '-' => {
                            name.push(chars[i]);
                            bump!();
                        }
                        _ => break,
                    }
                }
                tokens.push(Token { kind: TokenKind::Ident(name), line: tok_line, column: tok_col });
            }
            'A'..='Z' => {
                let mut name = String::new();
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    name.push(chars[i]);
                    bump!();
                }
                tokens.push(Token {
                    kind: TokenKind::UpperIdent(name),
                    line: tok_line,
                    column: tok_col,
                });
            }
            other => {
                diags.push(Diagnostic::error(
                    format!("unexpected character `{other}`"),
                    tok_line,
                    tok_col,
                ));
                bump!();
            }
        }
    }

    (tokens, diags)
}
