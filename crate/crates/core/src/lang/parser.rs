use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Atom, Expr, Identity, LetBinding, LinForm, Location};
use crate::ring::Symbol;
use crate::sequences::SequenceKind;

const RESERVED: &[&str] = &[
    "let", "forall", "where", "W", "V", "u", "p", "q", "a", "b", "c", "d",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    /// Largest allowed absolute coefficient of an index variable.
    pub slope_cap: i64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { slope_cap: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("index variable `{0}` is not declared by the enclosing forall")]
    UndeclaredIndex(String),
    #[error("exponents must be non-negative integer literals")]
    NonIntegerExponent,
    #[error("index coefficient {coeff} exceeds the slope cap {cap}")]
    SlopeCapExceeded { coeff: i64, cap: i64 },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("index variable `{0}` may only appear inside a sequence index or q^(..)")]
    IndexAsScalar(String),
    #[error("let-binding `{0}` must not contain sequence terms")]
    NonScalarLet(String),
    #[error("`{0}` is reserved or already defined")]
    DuplicateName(String),
    #[error("invalid scalar pin: {0}")]
    InvalidPin(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {kind}")]
pub struct ParseError {
    pub location: Location,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Assign,
    EqEq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Assign => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    loc: Location,
    start: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, ch)) = chars.peek() {
        let loc = Location { line, column: col };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        if ch.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if ch == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                advance(&mut chars);
            }
            continue;
        }
        let tok = if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            Tok::Int(s.parse().expect("digits form an integer"))
        } else {
            advance(&mut chars);
            match ch {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '=' => {
                    if chars.peek().is_some_and(|&(_, c)| c == '=') {
                        advance(&mut chars);
                        Tok::EqEq
                    } else {
                        Tok::Assign
                    }
                }
                other => {
                    return Err(ParseError {
                        location: loc,
                        kind: ParseErrorKind::Syntax {
                            expected: "a token".into(),
                            found: format!("character `{other}`"),
                        },
                    })
                }
            }
        };
        let end = chars.peek().map_or(text.len(), |&(i, _)| i);
        out.push(Token { tok, loc, start, end });
    }
    out.push(Token {
        tok: Tok::Eof,
        loc: Location { line, column: col },
        start: text.len(),
        end: text.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    opts: &'a ParseOptions,
    lets: Vec<LetBinding>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, opts: &'a ParseOptions) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
            opts,
            lets: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn loc(&self) -> Location {
        self.toks[self.pos].loc
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            location: self.loc(),
            kind,
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax {
            expected: what.to_string(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.expected(&tok.describe()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn is_let_name(&self, name: &str) -> bool {
        self.lets.iter().any(|b| b.name == name)
    }

    fn file(&mut self) -> Result<Vec<Identity>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(out),
                Tok::Ident(s) if s == "let" => self.let_decl()?,
                Tok::Ident(s) if s == "forall" => out.push(self.identity()?),
                _ => return Err(self.expected("`let` or `forall`")),
            }
        }
    }

    fn new_name(&mut self) -> Result<(String, Location), ParseError> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::Ident(name) => {
                if RESERVED.contains(&name.as_str()) || self.is_let_name(&name) {
                    return Err(self.error_here(ParseErrorKind::DuplicateName(name)));
                }
                self.bump();
                Ok((name, loc))
            }
            _ => Err(self.expected("a name")),
        }
    }

    fn let_decl(&mut self) -> Result<(), ParseError> {
        self.bump();
        let (name, loc) = self.new_name()?;
        self.expect(Tok::Assign)?;
        let expr = self.expr(&[])?;
        if expr.contains_atom() {
            return Err(ParseError {
                location: loc,
                kind: ParseErrorKind::NonScalarLet(name),
            });
        }
        self.end_of_item()?;
        self.lets.push(LetBinding { name, expr });
        Ok(())
    }

    fn end_of_item(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            Tok::Ident(s) if s == "let" || s == "forall" => Ok(()),
            _ => Err(self.expected("an operator or the end of the item")),
        }
    }

    fn identity(&mut self) -> Result<Identity, ParseError> {
        let first = self.bump();
        let mut vars: Vec<String> = Vec::new();
        loop {
            let (name, loc) = self.new_name()?;
            if vars.contains(&name) {
                return Err(ParseError {
                    location: loc,
                    kind: ParseErrorKind::DuplicateName(name),
                });
            }
            vars.push(name);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::Colon)?;
        let lhs = self.expr(&vars)?;
        self.expect(Tok::EqEq)?;
        let rhs = self.expr(&vars)?;
        let pins = if self.is_keyword("where") {
            self.bump();
            self.pins()?
        } else {
            Vec::new()
        };
        self.end_of_item()?;
        let end = self.toks[self.pos - 1].end;
        Ok(Identity {
            vars,
            lets: self.lets.clone(),
            lhs,
            rhs,
            pins,
            location: first.loc,
            source: self.src[first.start..end].to_string(),
        })
    }

    fn pins(&mut self) -> Result<Vec<(Symbol, BigInt)>, ParseError> {
        let mut pins: Vec<(Symbol, BigInt)> = Vec::new();
        loop {
            let loc = self.loc();
            let sym = match self.peek() {
                Tok::Ident(s) => Symbol::from_name(s),
                _ => None,
            }
            .ok_or_else(|| self.expected("a scalar symbol"))?;
            self.bump();
            self.expect(Tok::Assign)?;
            let negative = *self.peek() == Tok::Minus;
            if negative {
                self.bump();
            }
            let value = match self.peek().clone() {
                Tok::Int(v) => {
                    self.bump();
                    if negative {
                        -v
                    } else {
                        v
                    }
                }
                _ => return Err(self.expected("an integer")),
            };
            let invalid = |msg: String| ParseError {
                location: loc,
                kind: ParseErrorKind::InvalidPin(msg),
            };
            if sym == Symbol::Q && value.is_zero() {
                return Err(invalid("q must be nonzero".into()));
            }
            if pins.iter().any(|(s, _)| *s == sym) {
                return Err(invalid(format!("{sym} is pinned twice")));
            }
            pins.push((sym, value));
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(pins);
            }
        }
    }

    fn expr(&mut self, vars: &[String]) -> Result<Expr, ParseError> {
        let mut lhs = self.term(vars)?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term(vars)?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term(vars)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self, vars: &[String]) -> Result<Expr, ParseError> {
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let mut acc = self.factor(vars)?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor(vars)?));
        }
        Ok(if negative { Expr::Neg(Box::new(acc)) } else { acc })
    }

    fn factor(&mut self, vars: &[String]) -> Result<Expr, ParseError> {
        let base = self.base(vars)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(v) => {
                let k = v
                    .to_u32()
                    .ok_or_else(|| self.error_here(ParseErrorKind::NonIntegerExponent))?;
                self.bump();
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => Err(self.error_here(ParseErrorKind::NonIntegerExponent)),
        }
    }

    fn base(&mut self, vars: &[String]) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr(vars)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(kind) = SequenceKind::from_name(&name) {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let index = self.linform(vars)?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Atom(Atom::new(kind, index)));
                }
                if name == "q" && *self.peek_at(1) == Tok::Caret && *self.peek_at(2) == Tok::LParen {
                    self.bump();
                    self.bump();
                    self.bump();
                    let exponent = self.linform(vars)?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Atom(Atom::qpow(exponent)));
                }
                if let Some(s) = Symbol::from_name(&name) {
                    self.bump();
                    return Ok(Expr::Scalar(s));
                }
                if self.is_let_name(&name) {
                    self.bump();
                    return Ok(Expr::Name(name));
                }
                if vars.contains(&name) {
                    return Err(self.error_here(ParseErrorKind::IndexAsScalar(name)));
                }
                Err(self.error_here(ParseErrorKind::UnknownName(name)))
            }
            _ => Err(self.expected("an expression")),
        }
    }

    fn small_int(&self, v: &BigInt) -> Result<i64, ParseError> {
        v.to_i64().ok_or_else(|| {
            self.error_here(ParseErrorKind::Syntax {
                expected: "an index literal that fits in 64 bits".into(),
                found: format!("`{v}`"),
            })
        })
    }

    fn linform(&mut self, vars: &[String]) -> Result<LinForm, ParseError> {
        let mut form = LinForm::constant(vars.len(), 0);
        let mut sign = 1i64;
        match self.peek() {
            Tok::Minus => {
                sign = -1;
                self.bump();
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let loc = self.loc();
            let (scale, var) = match self.peek().clone() {
                Tok::Int(v) => {
                    let k = self.small_int(&v)?;
                    self.bump();
                    if *self.peek() == Tok::Star {
                        self.bump();
                        (k, Some(self.index_var(vars)?))
                    } else if matches!(self.peek(), Tok::Ident(_)) {
                        (k, Some(self.index_var(vars)?))
                    } else {
                        (k, None)
                    }
                }
                Tok::Ident(_) => (1, Some(self.index_var(vars)?)),
                _ => return Err(self.expected("an index term")),
            };
            match var {
                Some(i) => {
                    form.coeffs[i] += sign * scale;
                    let coeff = form.coeffs[i];
                    if coeff.abs() > self.opts.slope_cap {
                        return Err(ParseError {
                            location: loc,
                            kind: ParseErrorKind::SlopeCapExceeded {
                                coeff,
                                cap: self.opts.slope_cap,
                            },
                        });
                    }
                }
                None => form.constant += sign * scale,
            }
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => return Ok(form),
            }
            self.bump();
        }
    }

    fn index_var(&mut self, vars: &[String]) -> Result<usize, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => match vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.bump();
                    Ok(i)
                }
                None => Err(self.error_here(ParseErrorKind::UndeclaredIndex(name))),
            },
            _ => Err(self.expected("an index variable")),
        }
    }
}

/// Parses a file of let-bindings and identities.
pub fn parse_file(text: &str) -> Result<Vec<Identity>, ParseError> {
    parse_file_with(text, &ParseOptions::default())
}

pub fn parse_file_with(text: &str, opts: &ParseOptions) -> Result<Vec<Identity>, ParseError> {
    Parser::new(text, opts)?.file()
}

/// Parses text that must contain exactly one identity (plus any let-bindings
/// it uses).
pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut ids = parse_file(text)?;
    if ids.len() != 1 {
        return Err(ParseError {
            location: Location { line: 1, column: 1 },
            kind: ParseErrorKind::Syntax {
                expected: "exactly one identity".into(),
                found: format!("{} identities", ids.len()),
            },
        });
    }
    Ok(ids.remove(0))
}

/// Parses a standalone expression over the given index variables and
/// let-bindings.
pub fn parse_expr(text: &str, vars: &[String], lets: &[LetBinding]) -> Result<Expr, ParseError> {
    let opts = ParseOptions {
        slope_cap: i64::MAX,
    };
    let mut p = Parser::new(text, &opts)?;
    p.lets = lets.to_vec();
    let e = p.expr(vars)?;
    if *p.peek() != Tok::Eof {
        return Err(p.expected("end of input"));
    }
    Ok(e)
}
