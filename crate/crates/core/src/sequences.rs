//! The atom families `W`, `V`, `u` and `q^n`, as exact symbolic terms and as
//! exact rationals under an assignment.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cfinite::Annihilator;
use crate::ring::{rational_pow, Assignment, LaurentPoly, RingError, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SequenceKind {
    /// Horadam `W_n(a, b; p, q)`.
    W,
    /// The second Horadam sequence with `V_0 = c`, `V_1 = d`.
    V,
    /// `u_n = W_n(0, 1; p, q)`.
    U,
    /// `n -> q^n`.
    GeoQ,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [
        SequenceKind::W,
        SequenceKind::V,
        SequenceKind::U,
        SequenceKind::GeoQ,
    ];

    /// Name used in the identity language. `q^n` has no call syntax and is
    /// written `q^(..)`.
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::W => "W",
            SequenceKind::V => "V",
            SequenceKind::U => "u",
            SequenceKind::GeoQ => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<SequenceKind> {
        match name {
            "W" => Some(SequenceKind::W),
            "V" => Some(SequenceKind::V),
            "u" => Some(SequenceKind::U),
            _ => None,
        }
    }

    pub fn definition(self) -> SequenceDef {
        let sym = LaurentPoly::symbol;
        let (initial, charpoly) = match self {
            SequenceKind::W => (vec![sym(Symbol::A), sym(Symbol::B)], Annihilator::horadam()),
            SequenceKind::V => (vec![sym(Symbol::C), sym(Symbol::D)], Annihilator::horadam()),
            SequenceKind::U => (vec![LaurentPoly::zero(), LaurentPoly::one()], Annihilator::horadam()),
            SequenceKind::GeoQ => (vec![LaurentPoly::one()], Annihilator::geometric(sym(Symbol::Q))),
        };
        SequenceDef {
            kind: self,
            initial,
            charpoly,
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDef {
    pub kind: SequenceKind,
    /// Terms at indices `0 .. order`.
    pub initial: Vec<LaurentPoly>,
    pub charpoly: Annihilator,
}

impl SequenceDef {
    pub fn order(&self) -> usize {
        self.charpoly.order()
    }
}

/// Symbolic terms of one sequence, memoized outward from indices 0 and 1.
///
/// Forward steps use `s(k) = p s(k-1) - q s(k-2)`, backward steps
/// `s(k) = (p s(k+1) - s(k+2)) q^-1`.
#[derive(Debug, Clone)]
pub struct TermTable {
    kind: SequenceKind,
    forward: Vec<LaurentPoly>,
    backward: Vec<LaurentPoly>,
}

impl TermTable {
    pub fn new(kind: SequenceKind) -> Self {
        let def = kind.definition();
        TermTable {
            kind,
            forward: def.initial,
            backward: Vec::new(),
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn get(&mut self, k: i64) -> LaurentPoly {
        if self.kind == SequenceKind::GeoQ {
            return LaurentPoly::q_pow(k);
        }
        let p = LaurentPoly::symbol(Symbol::P);
        let q = LaurentPoly::symbol(Symbol::Q);
        if k >= 0 {
            let k = k as usize;
            while self.forward.len() <= k {
                let n = self.forward.len();
                let next = &(&p * &self.forward[n - 1]) - &(&q * &self.forward[n - 2]);
                self.forward.push(next);
            }
            self.forward[k].clone()
        } else {
            let k = k.unsigned_abs() as usize;
            let q_inv = LaurentPoly::q_pow(-1);
            while self.backward.len() < k {
                let j = self.backward.len() + 1;
                let s1 = self.at_nonpositive_plus(j, 1);
                let s2 = self.at_nonpositive_plus(j, 2);
                let next = &(&(&p * s1) - s2) * &q_inv;
                self.backward.push(next);
            }
            self.backward[k - 1].clone()
        }
    }

    /// Term at index `-j + offset` with `offset > 0`, already computed.
    fn at_nonpositive_plus(&self, j: usize, offset: usize) -> &LaurentPoly {
        let idx = offset as i64 - j as i64;
        if idx >= 0 {
            &self.forward[idx as usize]
        } else {
            &self.backward[idx.unsigned_abs() as usize - 1]
        }
    }
}

/// Per-kind caches for a whole prover run.
#[derive(Debug, Clone, Default)]
pub struct TermCache {
    tables: HashMap<SequenceKind, TermTable>,
}

impl TermCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, kind: SequenceKind, k: i64) -> LaurentPoly {
        self.tables
            .entry(kind)
            .or_insert_with(|| TermTable::new(kind))
            .get(k)
    }
}

/// The exact symbolic `k`-th term, for any integer `k`.
pub fn symbolic_term(kind: SequenceKind, k: i64) -> LaurentPoly {
    TermTable::new(kind).get(k)
}

/// The exact value of the `k`-th term under `at`, by iterating the
/// recurrence from the initial values.
pub fn numeric_term(kind: SequenceKind, k: i64, at: &Assignment) -> Result<BigRational, RingError> {
    at.check_q()?;
    let q = at.get(Symbol::Q);
    if kind == SequenceKind::GeoQ {
        return Ok(rational_pow(q, k));
    }
    let p = at.get(Symbol::P);
    let (mut s0, mut s1) = match kind {
        SequenceKind::W => (at.get(Symbol::A).clone(), at.get(Symbol::B).clone()),
        SequenceKind::V => (at.get(Symbol::C).clone(), at.get(Symbol::D).clone()),
        _ => (BigRational::zero(), BigRational::one()),
    };
    if k >= 0 {
        // (s0, s1) = (s(i), s(i+1))
        for _ in 0..k {
            let next = p * &s1 - q * &s0;
            s0 = std::mem::replace(&mut s1, next);
        }
        Ok(s0)
    } else {
        let q_inv = q.recip();
        for _ in 0..k.unsigned_abs() {
            let prev = (p * &s0 - &s1) * &q_inv;
            s1 = std::mem::replace(&mut s0, prev);
        }
        Ok(s0)
    }
}

/// Annihilator of `n -> S(m n + c)` for every integer offset `c`.
///
/// For `m > 0` this is the characteristic polynomial of the `m`-th power of
/// the companion matrix; for `m < 0` the companion of the reversed recurrence
/// is used, which is similar to the inverse companion matrix. `m = 0` gives
/// `x - 1`.
pub fn slope_annihilator(kind: SequenceKind, m: i64) -> Annihilator {
    let base = kind.definition().charpoly;
    match m {
        0 => Annihilator::constant(),
        m if m > 0 => base.dilated(m as u32),
        m => base
            .reversed()
            .expect("sequence recurrences have unit constant terms")
            .dilated(m.unsigned_abs() as u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn first_terms() {
        assert_eq!(symbolic_term(SequenceKind::W, 2).to_string(), "p*b - a*q");
        assert_eq!(symbolic_term(SequenceKind::W, -1).to_string(), "p*a*q^-1 - b*q^-1");
        assert_eq!(symbolic_term(SequenceKind::W, 0), LaurentPoly::symbol(Symbol::A));
        assert_eq!(symbolic_term(SequenceKind::V, 1), LaurentPoly::symbol(Symbol::D));
        assert_eq!(symbolic_term(SequenceKind::GeoQ, -2), LaurentPoly::q_pow(-2));
    }

    #[test]
    fn u_negative_index_relation() {
        for k in 1..=8 {
            let lhs = symbolic_term(SequenceKind::U, -k);
            let rhs = -(&LaurentPoly::q_pow(-k) * &symbolic_term(SequenceKind::U, k));
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn numeric_terms() {
        let fib = Assignment::from_ints(1, -1, 0, 1, 0, 0);
        assert_eq!(numeric_term(SequenceKind::U, 6, &fib).unwrap(), rat(8));
        assert_eq!(numeric_term(SequenceKind::U, -6, &fib).unwrap(), rat(-8));
        let at = Assignment::new().with(Symbol::Q, 3);
        assert_eq!(numeric_term(SequenceKind::GeoQ, 4, &at).unwrap(), rat(81));
        let w = Assignment::from_ints(2, 5, 7, -3, 0, 0);
        assert_eq!(numeric_term(SequenceKind::W, 0, &w).unwrap(), rat(7));
        let zero_q = Assignment::new().with(Symbol::Q, 0);
        assert_eq!(numeric_term(SequenceKind::W, 3, &zero_q), Err(RingError::ZeroQ));
    }

    #[test]
    fn cache_matches_fresh_terms() {
        let mut cache = TermCache::new();
        for k in [5, -3, 2, -7, 0, 9, -1] {
            for kind in SequenceKind::ALL {
                assert_eq!(cache.get(kind, k), symbolic_term(kind, k));
            }
        }
    }

    #[test]
    fn slope_annihilators() {
        assert_eq!(slope_annihilator(SequenceKind::W, 1), Annihilator::horadam());
        assert_eq!(
            slope_annihilator(SequenceKind::W, 2).to_string(),
            "x^2 + (-p^2 + 2*q)*x + q^2"
        );
        assert_eq!(
            slope_annihilator(SequenceKind::GeoQ, -1),
            Annihilator::geometric(LaurentPoly::q_pow(-1))
        );
        assert_eq!(slope_annihilator(SequenceKind::U, 0), Annihilator::constant());
        assert_eq!(
            slope_annihilator(SequenceKind::W, -1).to_string(),
            "x^2 - p*q^-1*x + q^-1"
        );
    }
}
