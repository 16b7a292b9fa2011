//! Lexer and recursive-descent parsers for propositional formulas and modal terms.
//!
//! Formulas: atoms `[a-z][a-z0-9]*`, constants `T` `F`, connectives `~ & | ->`, binding
//! tightest to loosest in that order; `->` associates to the right, `&` and `|` to the left.
//!
//! Modal terms: the same atoms and constants with `~ <> [] & |`; the three prefix operators
//! bind tightest. An inequality is `term <= term`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Arrow,
    Diamond,
    Square,
    Leq,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "'{s}'"),
            Tok::Top => "'T'",
            Tok::Bot => "'F'",
            Tok::Not => "'~'",
            Tok::And => "'&'",
            Tok::Or => "'|'",
            Tok::Arrow => "'->'",
            Tok::Diamond => "'<>'",
            Tok::Square => "'[]'",
            Tok::Leq => "'<='",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
        };
        f.write_str(s)
    }
}

fn err(position: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError { position, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let two = |next: u8| bytes.get(i + 1) == Some(&next);
        let (tok, width) = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'a'..=b'z' => {
                let start = i;
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_lowercase() || bytes[j].is_ascii_digit()) {
                    j += 1;
                }
                out.push((start, Tok::Ident(src[start..j].to_string())));
                i = j;
                continue;
            }
            b'T' => (Tok::Top, 1),
            b'F' => (Tok::Bot, 1),
            b'~' => (Tok::Not, 1),
            b'&' => (Tok::And, 1),
            b'|' => (Tok::Or, 1),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'-' if two(b'>') => (Tok::Arrow, 2),
            b'<' if two(b'>') => (Tok::Diamond, 2),
            b'<' if two(b'=') => (Tok::Leq, 2),
            b'[' if two(b']') => (Tok::Square, 2),
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(err(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((i, tok));
        i += width;
    }
    Ok(out)
}

/// A propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

/// A term over `⊤ ⊥ ∧ ∨ ¬ ◇ ■`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Top,
    Bot,
    Not(Box<Term>),
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Diamond(Box<Term>),
    Square(Box<Term>),
}

/// `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub lhs: Term,
    pub rhs: Term,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    modal: bool,
}

impl Parser {
    fn new(src: &str, modal: bool) -> Result<Self, SyntaxError> {
        let toks = lex(src)?;
        for (p, t) in &toks {
            let ok = match t {
                Tok::Arrow => !modal,
                Tok::Diamond | Tok::Square | Tok::Leq => modal,
                _ => true,
            };
            if !ok {
                return Err(err(*p, format!("{t} is not allowed here")));
            }
        }
        Ok(Parser { toks, pos: 0, end: src.len(), modal })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(err(self.here(), format!("unexpected {t}"))),
        }
    }

    // formulas
    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.f_or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn f_or(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.f_and()?;
        while self.eat(&Tok::Or) {
            acc = Formula::Or(Box::new(acc), Box::new(self.f_and()?));
        }
        Ok(acc)
    }

    fn f_and(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.f_unary()?;
        while self.eat(&Tok::And) {
            acc = Formula::And(Box::new(acc), Box::new(self.f_unary()?));
        }
        Ok(acc)
    }

    fn f_unary(&mut self) -> Result<Formula, SyntaxError> {
        let at = self.here();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.f_unary()?)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Formula::Atom(s))
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(err(self.here(), "expected ')'"));
                }
                Ok(f)
            }
            Some(t) => Err(err(at, format!("unexpected {t}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }

    // modal terms
    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.t_and()?;
        while self.eat(&Tok::Or) {
            acc = Term::Or(Box::new(acc), Box::new(self.t_and()?));
        }
        Ok(acc)
    }

    fn t_and(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.t_unary()?;
        while self.eat(&Tok::And) {
            acc = Term::And(Box::new(acc), Box::new(self.t_unary()?));
        }
        Ok(acc)
    }

    fn t_unary(&mut self) -> Result<Term, SyntaxError> {
        debug_assert!(self.modal);
        let at = self.here();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Term::Not(Box::new(self.t_unary()?)))
            }
            Some(Tok::Diamond) => {
                self.pos += 1;
                Ok(Term::Diamond(Box::new(self.t_unary()?)))
            }
            Some(Tok::Square) => {
                self.pos += 1;
                Ok(Term::Square(Box::new(self.t_unary()?)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Term::Var(s))
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Term::Top)
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Term::Bot)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                if !self.eat(&Tok::RParen) {
                    return Err(err(self.here(), "expected ')'"));
                }
                Ok(t)
            }
            Some(t) => Err(err(at, format!("unexpected {t}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(src, false)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src, true)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

pub fn parse_inequality(src: &str) -> Result<Inequality, SyntaxError> {
    let mut p = Parser::new(src, true)?;
    let lhs = p.term()?;
    if !p.eat(&Tok::Leq) {
        return Err(err(p.here(), "expected '<='"));
    }
    let rhs = p.term()?;
    p.expect_end()?;
    Ok(Inequality { lhs, rhs })
}

impl Formula {
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(s) => {
                out.insert(s.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Whether `¬` occurs, directly or through `→`.
    pub fn uses_negation(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => false,
            Formula::Not(_) | Formula::Implies(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.uses_negation() || b.uses_negation(),
        }
    }
}

impl Term {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(s) => {
                out.insert(s.clone());
            }
            Term::Top | Term::Bot => {}
            Term::Not(t) | Term::Diamond(t) | Term::Square(t) => t.collect_vars(out),
            Term::And(a, b) | Term::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl Inequality {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }
}

fn prec_f(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

fn write_f(f: &Formula, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let p = prec_f(f);
    if p < min {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(s) => out.write_str(s)?,
        Formula::Top => out.write_str("T")?,
        Formula::Bot => out.write_str("F")?,
        Formula::Not(a) => {
            out.write_str("~")?;
            write_f(a, out, 3)?;
        }
        Formula::And(a, b) => {
            write_f(a, out, 2)?;
            out.write_str(" & ")?;
            write_f(b, out, 3)?;
        }
        Formula::Or(a, b) => {
            write_f(a, out, 1)?;
            out.write_str(" | ")?;
            write_f(b, out, 2)?;
        }
        Formula::Implies(a, b) => {
            write_f(a, out, 1)?;
            out.write_str(" -> ")?;
            write_f(b, out, 0)?;
        }
    }
    if p < min {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_f(self, f, 0)
    }
}

fn prec_t(t: &Term) -> u8 {
    match t {
        Term::Or(..) => 1,
        Term::And(..) => 2,
        _ => 3,
    }
}

fn write_t(t: &Term, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    let p = prec_t(t);
    if p < min {
        out.write_str("(")?;
    }
    match t {
        Term::Var(s) => out.write_str(s)?,
        Term::Top => out.write_str("T")?,
        Term::Bot => out.write_str("F")?,
        Term::Not(a) => {
            out.write_str("~")?;
            write_t(a, out, 3)?;
        }
        Term::Diamond(a) => {
            out.write_str("<>")?;
            write_t(a, out, 3)?;
        }
        Term::Square(a) => {
            out.write_str("[]")?;
            write_t(a, out, 3)?;
        }
        Term::And(a, b) => {
            write_t(a, out, 2)?;
            out.write_str(" & ")?;
            write_t(b, out, 3)?;
        }
        Term::Or(a, b) => {
            write_t(a, out, 1)?;
            out.write_str(" | ")?;
            write_t(b, out, 2)?;
        }
    }
    if p < min {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_t(self, f, 0)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}
