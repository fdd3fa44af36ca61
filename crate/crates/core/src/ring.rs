//! Exact coefficient arithmetic.
//!
//! [`LaurentPoly`] is a sparse multivariate polynomial with arbitrary-precision
//! integer coefficients in the scalar symbols `p, a, b, c, d, q`. Only `q` may
//! carry a negative exponent, which makes `q` a unit and lets backward
//! sequence steps stay division-free.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("q must be assigned a nonzero value")]
    ZeroQ,
    #[error("cannot specialize q to {0} while negative powers of q remain")]
    NonUnitQ(BigInt),
}

/// The fixed scalar symbols. The declaration order is the canonical symbol
/// order used for monomial comparison and rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    P,
    A,
    B,
    C,
    D,
    Q,
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [
        Symbol::P,
        Symbol::A,
        Symbol::B,
        Symbol::C,
        Symbol::D,
        Symbol::Q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::P => "p",
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::C => "c",
            Symbol::D => "d",
            Symbol::Q => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over [`Symbol::ALL`]. Entries for `p, a, b, c, d` are
/// never negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [i64; 6],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::one().with(s, 1)
    }

    /// Sets the exponent of `s`.
    ///
    /// Panics if a negative exponent is requested for a symbol other than `q`.
    pub fn with(mut self, s: Symbol, exp: i64) -> Self {
        assert!(
            exp >= 0 || s == Symbol::Q,
            "only q may carry a negative exponent"
        );
        self.exps[s.slot()] = exp;
        self
    }

    pub fn exponent(&self, s: Symbol) -> i64 {
        self.exps[s.slot()]
    }

    /// Sum of all exponents, with the exponent of `q` counted with its sign.
    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += o;
        }
        Monomial { exps }
    }

    fn render(&self, out: &mut String, dsl: bool) {
        let mut first = true;
        for s in Symbol::ALL {
            let e = self.exponent(s);
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(s.name());
            match e {
                1 => {}
                e if e < 0 && dsl => out.push_str(&format!("^({e})")),
                e => out.push_str(&format!("^{e}")),
            }
        }
    }
}

/// Graded lexicographic order: higher total degree is greater; ties are broken
/// by comparing exponents in canonical symbol order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Values for the scalar symbols. Unassigned symbols default to zero, except
/// `q` which defaults to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: [BigRational; 6],
}

impl Default for Assignment {
    fn default() -> Self {
        let mut values: [BigRational; 6] = Default::default();
        values[Symbol::Q.slot()] = BigRational::one();
        Assignment { values }
    }
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an assignment from integer values in the order `p, q, a, b, c, d`.
    pub fn from_ints(p: i64, q: i64, a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new()
            .with(Symbol::P, p)
            .with(Symbol::Q, q)
            .with(Symbol::A, a)
            .with(Symbol::B, b)
            .with(Symbol::C, c)
            .with(Symbol::D, d)
    }

    pub fn with(mut self, s: Symbol, value: impl Into<BigInt>) -> Self {
        self.set(s, BigRational::from_integer(value.into()));
        self
    }

    pub fn set(&mut self, s: Symbol, value: BigRational) {
        self.values[s.slot()] = value;
    }

    pub fn get(&self, s: Symbol) -> &BigRational {
        &self.values[s.slot()]
    }

    pub fn check_q(&self) -> Result<(), RingError> {
        if self.get(Symbol::Q).is_zero() {
            Err(RingError::ZeroQ)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            Symbol::P,
            Symbol::Q,
            Symbol::A,
            Symbol::B,
            Symbol::C,
            Symbol::D,
        ]
        .iter()
        .map(|&s| format!("{}={}", s, self.get(s)))
        .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Rational power with a signed exponent. The base must be nonzero when
/// `exp < 0`.
pub(crate) fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    let magnitude = Pow::pow(base, exp.unsigned_abs());
    if exp < 0 {
        magnitude.recip()
    } else {
        magnitude
    }
}

/// Canonical sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(1, Monomial::symbol(s))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::term(1, Monomial::one().with(Symbol::Q, k))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// If this is `±q^k`, returns `(sign, k)`.
    pub fn as_signed_q_power(&self) -> Option<(i8, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let q_only = Symbol::ALL
            .iter()
            .all(|&s| s == Symbol::Q || m.exponent(s) == 0);
        if !q_only {
            return None;
        }
        let k = m.exponent(Symbol::Q);
        if c.is_one() {
            Some((1, k))
        } else if (-c).is_one() {
            Some((-1, k))
        } else {
            None
        }
    }

    /// Inverse of `±q^k`; `None` for non-units.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        let (sign, k) = self.as_signed_q_power()?;
        Some(LaurentPoly::q_pow(-k).scale(&BigInt::from(sign)))
    }

    /// True when the value is `±q^k`, a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.as_signed_q_power().is_some()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i64) -> LaurentPoly {
        let qk = Monomial::one().with(Symbol::Q, k);
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(&qk), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Smallest exponent of `q` over all terms (0 for the zero polynomial).
    pub fn min_q_exponent(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exponent(Symbol::Q))
            .min()
            .unwrap_or(0)
    }

    /// Multiplies by the smallest power of `q` that removes every negative
    /// exponent. Zero-ness is preserved because `q` is a unit.
    pub fn clear_q_denominator(&self) -> LaurentPoly {
        let lo = self.min_q_exponent();
        if lo < 0 {
            self.shift_q(-lo)
        } else {
            self.clone()
        }
    }

    pub fn evaluate(&self, at: &Assignment) -> Result<BigRational, RingError> {
        at.check_q()?;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for s in Symbol::ALL {
                let e = m.exponent(s);
                if e != 0 {
                    v *= rational_pow(at.get(s), e);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Replaces the symbols in `pins` by integer values, leaving the others
    /// symbolic.
    pub fn specialize(&self, pins: &[(Symbol, BigInt)]) -> Result<LaurentPoly, RingError> {
        for (s, v) in pins {
            if *s == Symbol::Q && v.is_zero() {
                return Err(RingError::ZeroQ);
            }
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (s, v) in pins {
                let e = m.exponent(*s);
                if e == 0 {
                    continue;
                }
                if e < 0 {
                    if !v.abs().is_one() {
                        return Err(RingError::NonUnitQ(v.clone()));
                    }
                    coeff *= Pow::pow(v, e.unsigned_abs());
                } else {
                    coeff *= Pow::pow(v, e.unsigned_abs());
                }
                mono = mono.with(*s, 0);
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Rendering in the identity language, where negative powers of `q` are
    /// written `q^(-k)`.
    pub fn to_dsl(&self) -> String {
        self.render(true)
    }

    fn render(&self, dsl: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                m.render(&mut out, dsl);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl From<Symbol> for LaurentPoly {
    fn from(s: Symbol) -> Self {
        LaurentPoly::symbol(s)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}
