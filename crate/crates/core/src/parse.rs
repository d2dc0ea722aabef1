//! Recursive-descent parser for the grammar and word DSL.
//!
//! ```text
//! grammar   := statement ((';' | NEWLINE) statement)*
//! statement := ε | 'const' LETTER (','? LETTER)* | LETTER '->' expr
//! expr      := ('+' | '-')? term (('+' | '-') term)*
//! term      := factor ('*'? factor)*
//! factor    := atom ('^' INTEGER)?
//! atom      := INTEGER | LETTER | '(' expr ')'
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::grammar::Grammar;
use crate::poly::{Letter, Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: {message}")]
    Syntax { pos: Position, message: String },
    #[error("{pos}: empty body in rule for `{letter}`")]
    EmptyRule { pos: Position, letter: String },
    #[error("{pos}: duplicate rule for `{letter}`")]
    DuplicateRule { pos: Position, letter: String },
    #[error("grammar has no rules")]
    NoRules,
}

impl ParseError {
    pub fn position(&self) -> Option<Position> {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::EmptyRule { pos, .. }
            | ParseError::DuplicateRule { pos, .. } => Some(*pos),
            ParseError::NoRules => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Arrow,
    Semi,
    Comma,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(i) => write!(f, "integer `{i}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn syntax(pos: Position, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(src: &str, newlines: bool) -> Result<Vec<(Tok, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let pos = Position { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            '\n' => {
                bump(&mut chars);
                if newlines {
                    out.push((Tok::Newline, pos));
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '0'..='9' => {
                let mut digits = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(bump(&mut chars).unwrap());
                }
                out.push((Tok::Int(digits.parse().unwrap()), pos));
            }
            c if c.is_alphabetic() => {
                let mut name = String::new();
                while chars.peek().is_some_and(|&c| c.is_alphanumeric() || c == '_') {
                    name.push(bump(&mut chars).unwrap());
                }
                out.push((Tok::Ident(name), pos));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push((Tok::Arrow, pos));
                } else {
                    out.push((Tok::Minus, pos));
                }
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
                };
                bump(&mut chars);
                out.push((tok, pos));
            }
        }
    }
    out.push((Tok::Eof, Position { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    at: usize,
}

impl Parser {
    fn new(src: &str, newlines: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src, newlines)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Position {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Position) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        Err(syntax(
            self.pos(),
            format!("expected {wanted}, found {}", self.peek()),
        ))
    }

    fn letter(&mut self) -> Result<Letter, ParseError> {
        match self.next() {
            (Tok::Ident(name), pos) => Letter::new(name).map_err(|e| syntax(pos, e.to_string())),
            (tok, pos) => Err(syntax(pos, format!("expected a letter, found {tok}"))),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.next();
                true
            }
            Tok::Plus => {
                self.next();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.next();
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        match self.next() {
            (Tok::Int(e), pos) => {
                let e: u32 = e
                    .try_into()
                    .map_err(|_| syntax(pos, "exponent does not fit in 32 bits"))?;
                Ok(base.pow(e))
            }
            (tok, pos) => Err(syntax(pos, format!("expected an exponent, found {tok}"))),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(i) => {
                self.next();
                Ok(Polynomial::constant(i))
            }
            Tok::Ident(_) => Ok(self.letter()?.into()),
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                match self.next() {
                    (Tok::RParen, _) => Ok(inner),
                    (tok, pos) => Err(syntax(pos, format!("expected `)`, found {tok}"))),
                }
            }
            _ => self.unexpected("a term"),
        }
    }

    fn at_separator(&self) -> bool {
        matches!(self.peek(), Tok::Semi | Tok::Newline | Tok::Eof)
    }
}

/// Parses a word such as `x^2*y^2` or `3x - (x + y)^2`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text, false)?;
    let poly = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of input");
    }
    Ok(poly)
}

/// Parses a monomial with unit coefficient, e.g. the prefix of an operator.
pub fn parse_monomial(text: &str) -> Result<Monomial, ParseError> {
    let poly = parse_polynomial(text)?;
    poly.as_monomial().cloned().ok_or_else(|| {
        syntax(
            Position { line: 1, column: 1 },
            format!("`{text}` is not a monomial"),
        )
    })
}

/// Parses a grammar such as `x -> x*y; y -> y`.
///
/// Letters declared with `const a, b` differentiate to zero without warnings.
pub fn parse_grammar(text: &str) -> Result<Grammar, ParseError> {
    let mut p = Parser::new(text, true)?;
    let mut rules = BTreeMap::new();
    let mut constants = BTreeSet::new();

    loop {
        match p.peek().clone() {
            Tok::Eof => break,
            Tok::Semi | Tok::Newline => {
                p.next();
                continue;
            }
            Tok::Ident(word) if word == "const" => {
                p.next();
                constants.insert(p.letter()?);
                while !p.at_separator() {
                    if *p.peek() == Tok::Comma {
                        p.next();
                    }
                    constants.insert(p.letter()?);
                }
            }
            Tok::Ident(_) => {
                let pos = p.pos();
                let head = p.letter()?;
                if *p.peek() != Tok::Arrow {
                    return p.unexpected("`->`");
                }
                p.next();
                if p.at_separator() {
                    return Err(ParseError::EmptyRule {
                        pos: p.pos(),
                        letter: head.to_string(),
                    });
                }
                let body = p.expr()?;
                if !p.at_separator() {
                    return p.unexpected("`;` or end of line");
                }
                if rules.contains_key(&head) {
                    return Err(ParseError::DuplicateRule {
                        pos,
                        letter: head.to_string(),
                    });
                }
                rules.insert(head, body);
            }
            _ => return p.unexpected("a rule"),
        }
    }

    if rules.is_empty() {
        return Err(ParseError::NoRules);
    }
    Ok(Grammar::from_parts(rules, constants))
}
