use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Atom, Expr, Identity, LetBinding};
use crate::ring::{Assignment, LaurentPoly, RingError};
use crate::sequences::{numeric_term, SequenceKind};

/// A fully distributed sum of monomials, each a [`LaurentPoly`] scalar times a
/// sorted multiset of atoms. Monomials with equal atom multisets are merged
/// and zero scalars are dropped. A `q^(..)` atom never carries a constant
/// offset; constants are folded into the scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    terms: BTreeMap<Vec<Atom>, LaurentPoly>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        let mut nf = Self::zero();
        nf.add_monomial(Vec::new(), c);
        nf
    }

    /// A single atom, with a `q^(..)` constant folded into the scalar.
    pub fn atom(atom: Atom) -> Self {
        let (scalar, atom) = fold_atom(atom);
        let mut nf = Self::zero();
        nf.add_monomial(atom.into_iter().collect(), scalar);
        nf
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials as `(atoms, scalar)` in canonical order.
    pub fn monomials(&self) -> impl Iterator<Item = (&[Atom], &LaurentPoly)> {
        self.terms.iter().map(|(a, c)| (a.as_slice(), c))
    }

    fn add_monomial(&mut self, mut atoms: Vec<Atom>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        atoms.sort();
        use std::collections::btree_map::Entry;
        match self.terms.entry(atoms) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_monomial(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NormalForm {
        NormalForm {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &NormalForm) -> NormalForm {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for (a1, c1) in &self.terms {
            for (a2, c2) in &other.terms {
                let atoms = a1.iter().chain(a2.iter()).cloned().collect();
                out.add_monomial(atoms, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> NormalForm {
        let mut out = NormalForm::scalar(LaurentPoly::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> NormalForm {
        let mut out = NormalForm::zero();
        for (a, s) in &self.terms {
            out.add_monomial(a.clone(), s * c);
        }
        out
    }

    /// Replaces index variable `var` by `value` everywhere, folding `q^(..)`
    /// atoms that become constant into the scalars.
    pub fn substitute_index(&self, var: usize, value: i64) -> NormalForm {
        let mut out = NormalForm::zero();
        for (atoms, c) in &self.terms {
            let mut scalar = c.clone();
            let mut kept = Vec::with_capacity(atoms.len());
            for atom in atoms {
                let moved = Atom::new(atom.kind, atom.index.substitute(var, value));
                let (s, a) = fold_atom(moved);
                scalar = &scalar * &s;
                kept.extend(a);
            }
            out.add_monomial(kept, scalar);
        }
        out
    }

    /// Whether `var` has a nonzero coefficient in some atom.
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms
            .keys()
            .flatten()
            .any(|a| a.index.coeff(var) != 0)
    }

    /// No atom depends on any index variable.
    pub fn is_index_free(&self) -> bool {
        self.terms.keys().flatten().all(|a| a.index.is_constant())
    }

    /// Exact value with atoms evaluated by iterating their recurrences.
    pub fn evaluate(&self, at: &Assignment, indices: &[i64]) -> Result<BigRational, RingError> {
        let mut total = BigRational::zero();
        for (atoms, c) in &self.terms {
            let mut v = c.evaluate(at)?;
            for a in atoms {
                v *= numeric_term(a.kind, a.index.evaluate(indices), at)?;
            }
            total += v;
        }
        Ok(total)
    }

    /// Renders in the identity language; the result normalizes back to
    /// `self`.
    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (atoms, c)) in self.terms.iter().enumerate() {
            let single_negative = c.len() == 1 && c.terms().next().is_some_and(|(_, v)| v.is_negative());
            let mag = if single_negative { -c } else { c.clone() };
            match (i, single_negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors = Vec::new();
            if atoms.is_empty() || !mag.is_one() {
                if mag.len() > 1 {
                    factors.push(format!("({})", mag.to_dsl()));
                } else {
                    factors.push(mag.to_dsl());
                }
            }
            let mut idx = 0;
            while idx < atoms.len() {
                let run = atoms[idx..].iter().take_while(|a| **a == atoms[idx]).count();
                let body = atoms[idx].render(vars);
                factors.push(if run > 1 { format!("{body}^{run}") } else { body });
                idx += run;
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Splits the constant part of a `q^(..)` exponent into a scalar. Returns
/// the scalar factor and the remaining atom, if any.
fn fold_atom(atom: Atom) -> (LaurentPoly, Option<Atom>) {
    if atom.kind != SequenceKind::GeoQ {
        return (LaurentPoly::one(), Some(atom));
    }
    let scalar = LaurentPoly::q_pow(atom.index.constant);
    if atom.index.is_constant() {
        return (scalar, None);
    }
    let mut index = atom.index;
    index.constant = 0;
    (scalar, Some(Atom::qpow(index)))
}

/// Distributes `e` into a [`NormalForm`], substituting let-bound names.
///
/// Panics if `e` references a name missing from `lets`; the parser rejects
/// such input.
pub fn normalize(e: &Expr, lets: &[LetBinding]) -> NormalForm {
    match e {
        Expr::Int(v) => NormalForm::scalar(LaurentPoly::constant(v.clone())),
        Expr::Scalar(s) => NormalForm::scalar(LaurentPoly::symbol(*s)),
        Expr::Name(n) => {
            let b = lets
                .iter()
                .rev()
                .find(|b| b.name == *n)
                .unwrap_or_else(|| panic!("unbound name `{n}`"));
            normalize(&b.expr, lets)
        }
        Expr::Atom(a) => NormalForm::atom(a.clone()),
        Expr::Neg(x) => normalize(x, lets).neg(),
        Expr::Add(x, y) => normalize(x, lets).add(&normalize(y, lets)),
        Expr::Sub(x, y) => normalize(x, lets).sub(&normalize(y, lets)),
        Expr::Mul(x, y) => normalize(x, lets).mul(&normalize(y, lets)),
        Expr::Pow(x, k) => normalize(x, lets).pow(*k),
    }
}

/// Normal form of `lhs - rhs`.
pub fn normalize_identity(id: &Identity) -> NormalForm {
    normalize(&id.difference(), &id.lets)
}
