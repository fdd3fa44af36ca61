//! The identity language: syntax tree, parser and normal forms.
//!
//! ```text
//! let e = p*a*b - q*a^2 - b^2
//! forall n: W(n+2)*W(n+4) - W(n+3)^2 == e * q^(n+2)
//! forall n: u(n+1)*u(n+2)*u(n+6) - u(n+3)^3 == q^(n)*u(n) where p = 1, q = -1
//! ```

mod normal;
mod parser;

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::ring::Symbol;
use crate::sequences::SequenceKind;

pub use normal::{normalize, normalize_identity, NormalForm};
pub use parser::{
    parse_expr, parse_file, parse_file_with, parse_identity, ParseError, ParseErrorKind,
    ParseOptions,
};

/// Integer linear form over the declared index variables of an identity.
/// `coeffs[i]` is the coefficient of the `i`-th declared variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl LinForm {
    pub fn constant(arity: usize, c: i64) -> Self {
        LinForm {
            coeffs: vec![0; arity],
            constant: c,
        }
    }

    /// `var + offset`.
    pub fn var(arity: usize, var: usize, offset: i64) -> Self {
        let mut f = Self::constant(arity, offset);
        f.coeffs[var] = 1;
        f
    }

    pub fn coeff(&self, var: usize) -> i64 {
        self.coeffs.get(var).copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn substitute(&self, var: usize, value: i64) -> LinForm {
        let mut out = self.clone();
        out.constant += out.coeffs[var] * value;
        out.coeffs[var] = 0;
        out
    }

    pub fn evaluate(&self, values: &[i64]) -> i64 {
        self.coeffs
            .iter()
            .zip(values)
            .map(|(c, v)| c * v)
            .sum::<i64>()
            + self.constant
    }

    pub fn render(&self, vars: &[String]) -> String {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(vars) {
            let c = *c;
            if c == 0 {
                continue;
            }
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                let _ = write!(out, "{}*", c.abs());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            return self.constant.to_string();
        }
        if self.constant != 0 {
            let sign = if self.constant < 0 { " - " } else { " + " };
            let _ = write!(out, "{sign}{}", self.constant.abs());
        }
        out
    }
}

/// One sequence occurrence such as `W(2*n - j + 3)` or `q^(n + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub kind: SequenceKind,
    pub index: LinForm,
}

impl Atom {
    pub fn new(kind: SequenceKind, index: LinForm) -> Self {
        Atom { kind, index }
    }

    pub fn qpow(exponent: LinForm) -> Self {
        Atom::new(SequenceKind::GeoQ, exponent)
    }

    pub fn render(&self, vars: &[String]) -> String {
        match self.kind {
            SequenceKind::GeoQ => format!("q^({})", self.index.render(vars)),
            k => format!("{}({})", k.name(), self.index.render(vars)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Scalar(Symbol),
    Name(String),
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn contains_atom(&self) -> bool {
        match self {
            Expr::Atom(_) => true,
            Expr::Int(_) | Expr::Scalar(_) | Expr::Name(_) => false,
            Expr::Neg(e) | Expr::Pow(e, _) => e.contains_atom(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.contains_atom() || b.contains_atom()
            }
        }
    }

    /// Renders in the identity language. The output reparses to the same
    /// tree.
    pub fn render(&self, vars: &[String]) -> String {
        let mut out = String::new();
        self.render_into(&mut out, vars);
        out
    }

    fn is_primary(&self) -> bool {
        matches!(
            self,
            Expr::Int(_) | Expr::Scalar(_) | Expr::Name(_) | Expr::Atom(_)
        )
    }

    fn render_into(&self, out: &mut String, vars: &[String]) {
        let paren = |out: &mut String, e: &Expr| {
            out.push('(');
            e.render_into(out, vars);
            out.push(')');
        };
        match self {
            Expr::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Expr::Scalar(s) => out.push_str(s.name()),
            Expr::Name(n) => out.push_str(n),
            Expr::Atom(a) => out.push_str(&a.render(vars)),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.render_into(out, vars);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                if matches!(**b, Expr::Add(..) | Expr::Sub(..)) {
                    paren(out, b);
                } else {
                    b.render_into(out, vars);
                }
            }
            Expr::Neg(e) => {
                out.push('-');
                match **e {
                    Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => paren(out, e),
                    _ => e.render_into(out, vars),
                }
            }
            Expr::Mul(a, b) => {
                if matches!(**a, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_)) {
                    paren(out, a);
                } else {
                    a.render_into(out, vars);
                }
                out.push_str(" * ");
                if matches!(**b, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) | Expr::Mul(..)) {
                    paren(out, b);
                } else {
                    b.render_into(out, vars);
                }
            }
            Expr::Pow(base, k) => {
                if base.is_primary() {
                    base.render_into(out, vars);
                } else {
                    paren(out, base);
                }
                let _ = write!(out, "^{k}");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetBinding {
    pub name: String,
    pub expr: Expr,
}

/// 1-based position in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// One `forall` item together with the let-bindings in scope and any pinned
/// scalars.
#[derive(Debug, Clone)]
pub struct Identity {
    pub vars: Vec<String>,
    pub lets: Vec<LetBinding>,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Scalars fixed to integer values for this identity (`where p = 1`).
    pub pins: Vec<(Symbol, BigInt)>,
    pub location: Location,
    /// The `forall ..` item exactly as written.
    pub source: String,
}

/// Structural equality; location and source text are ignored.
impl PartialEq for Identity {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.lets == other.lets
            && self.lhs == other.lhs
            && self.rhs == other.rhs
            && self.pins == other.pins
    }
}

impl Eq for Identity {}

impl Identity {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn pin(&self, s: Symbol) -> Option<&BigInt> {
        self.pins.iter().find(|(p, _)| *p == s).map(|(_, v)| v)
    }

    pub fn binding(&self, name: &str) -> Option<&Expr> {
        self.lets.iter().find(|b| b.name == name).map(|b| &b.expr)
    }

    /// `lhs - rhs` as an expression.
    pub fn difference(&self) -> Expr {
        Expr::Sub(Box::new(self.lhs.clone()), Box::new(self.rhs.clone()))
    }

    /// Renders the let-bindings followed by the `forall` item.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for b in &self.lets {
            let _ = writeln!(out, "let {} = {}", b.name, b.expr.render(&[]));
        }
        let _ = write!(
            out,
            "forall {}: {} == {}",
            self.vars.join(", "),
            self.lhs.render(&self.vars),
            self.rhs.render(&self.vars)
        );
        if !self.pins.is_empty() {
            let pins: Vec<String> = self.pins.iter().map(|(s, v)| format!("{s} = {v}")).collect();
            let _ = write!(out, " where {}", pins.join(", "));
        }
        out
    }
}
