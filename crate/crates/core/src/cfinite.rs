//! Annihilator closure algebra for C-finite sequences.
//!
//! An [`Annihilator`] is a monic characteristic polynomial
//! `x^d + c_{d-1} x^{d-1} + .. + c_0`, read as the recurrence
//! `s(n+d) + c_{d-1} s(n+d-1) + .. + c_0 s(n) = 0`. Closure under pointwise
//! products goes through the Kronecker product of companion matrices, closure
//! under sums through the polynomial product.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::ring::{Assignment, LaurentPoly, RingError, Symbol};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnihilatorError {
    #[error("characteristic polynomial must be monic of positive degree")]
    NotMonic,
    #[error("expected an order-{expected} annihilator, got order {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("need at least {needed} terms to check an order-{order} recurrence, got {found}")]
    ShortList {
        order: usize,
        needed: usize,
        found: usize,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Annihilator {
    poly: UPoly,
}

impl Annihilator {
    pub fn new(poly: UPoly) -> Result<Self, AnnihilatorError> {
        match poly.degree() {
            Some(d) if d >= 1 && poly.is_monic() => Ok(Annihilator { poly }),
            _ => Err(AnnihilatorError::NotMonic),
        }
    }

    /// `x - 1`, which annihilates every constant sequence.
    pub fn constant() -> Self {
        Self::geometric(LaurentPoly::one())
    }

    /// `x - r`, which annihilates `n -> c r^n`.
    pub fn geometric(ratio: LaurentPoly) -> Self {
        Annihilator {
            poly: UPoly::linear_root(ratio),
        }
    }

    /// `x^2 - p x + q`, the recurrence shared by `W`, `V` and `u`.
    pub fn horadam() -> Self {
        Annihilator {
            poly: UPoly::from_coeffs(vec![
                LaurentPoly::symbol(Symbol::Q),
                -LaurentPoly::symbol(Symbol::P),
                LaurentPoly::one(),
            ]),
        }
    }

    pub fn order(&self) -> usize {
        self.poly.degree().expect("annihilator is nonzero")
    }

    pub fn charpoly(&self) -> &UPoly {
        &self.poly
    }

    pub fn constant_term(&self) -> LaurentPoly {
        self.poly.coeff(0)
    }

    /// Whether the constant term is `±q^k`, which lets the recurrence be run
    /// backwards inside the Laurent ring.
    pub fn has_unit_constant(&self) -> bool {
        self.constant_term().is_unit()
    }

    pub fn companion(&self) -> Matrix {
        Matrix::companion(&self.poly)
    }

    /// Annihilator of `n -> s(-n)` for any `s` annihilated by `self`: the
    /// reciprocal polynomial normalized to be monic.
    ///
    /// Returns `None` when the constant term is not a unit.
    pub fn reversed(&self) -> Option<Annihilator> {
        let inv = self.constant_term().unit_inverse()?;
        let mut coeffs: Vec<LaurentPoly> = self.poly.coeffs().to_vec();
        coeffs.reverse();
        let poly = UPoly::from_coeffs(coeffs).scale(&inv);
        Some(Annihilator { poly })
    }

    /// Annihilator of `n -> s(k n + c)` for `k >= 1`: the characteristic
    /// polynomial of the `k`-th power of the companion matrix.
    pub fn dilated(&self, k: u32) -> Annihilator {
        match k {
            0 => Annihilator::constant(),
            1 => self.clone(),
            _ if self.order() == 1 => Annihilator::geometric((-self.constant_term()).pow(k)),
            _ => Annihilator {
                poly: self.companion().pow(k).charpoly(),
            },
        }
    }

    /// Pointwise product closure: the characteristic polynomial of the
    /// Kronecker product of the two companion matrices. The order is the
    /// product of the orders.
    pub fn product(&self, other: &Annihilator) -> Annihilator {
        if self.order() == 1 {
            return other.scaled_roots(&-self.constant_term());
        }
        if other.order() == 1 {
            return self.scaled_roots(&-other.constant_term());
        }
        let k = self.companion().kronecker(&other.companion());
        Annihilator { poly: k.charpoly() }
    }

    /// Multiplies every root by `r`: coefficient `c_i` becomes `c_i r^(d-i)`.
    fn scaled_roots(&self, r: &LaurentPoly) -> Annihilator {
        let d = self.order();
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * &r.pow((d - i) as u32))
            .collect();
        Annihilator {
            poly: UPoly::from_coeffs(coeffs),
        }
    }

    /// Sum closure: the product of the characteristic polynomials, or `self`
    /// when both are equal.
    pub fn sum(&self, other: &Annihilator) -> Annihilator {
        if self == other {
            return self.clone();
        }
        Annihilator {
            poly: &self.poly * &other.poly,
        }
    }

    /// For `x^2 - P x + Q`, the order-3 annihilator
    /// `x^3 - (P^2 - Q) x^2 + (P^2 Q - Q^2) x - Q^3` of all products of two
    /// sequences it annihilates.
    pub fn symmetric_square(&self) -> Result<Annihilator, AnnihilatorError> {
        if self.order() != 2 {
            return Err(AnnihilatorError::OrderMismatch {
                expected: 2,
                found: self.order(),
            });
        }
        let p = -self.poly.coeff(1);
        let q = self.poly.coeff(0);
        let p2 = &p * &p;
        let c2 = -(&p2 - &q);
        let c1 = &(&p2 * &q) - &(&q * &q);
        let c0 = -q.pow(3);
        Ok(Annihilator {
            poly: UPoly::from_coeffs(vec![c0, c1, c2, LaurentPoly::one()]),
        })
    }

    fn check_len(&self, found: usize) -> Result<(), AnnihilatorError> {
        let needed = self.order() + 1;
        if found < needed {
            return Err(AnnihilatorError::ShortList {
                order: self.order(),
                needed,
                found,
            });
        }
        Ok(())
    }

    /// True iff every window of `order + 1` consecutive terms satisfies the
    /// recurrence exactly.
    pub fn annihilates(&self, terms: &[LaurentPoly]) -> Result<bool, AnnihilatorError> {
        self.check_len(terms.len())?;
        let coeffs = self.poly.coeffs();
        Ok(terms.windows(coeffs.len()).all(|w| {
            let mut acc = LaurentPoly::zero();
            for (c, t) in coeffs.iter().zip(w) {
                acc += &(c * t);
            }
            acc.is_zero()
        }))
    }

    /// Numeric variant of [`Annihilator::annihilates`]: coefficients are
    /// evaluated at `at` first.
    pub fn annihilates_values(
        &self,
        terms: &[BigRational],
        at: &Assignment,
    ) -> Result<bool, AnnihilatorError> {
        self.check_len(terms.len())?;
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .map(|c| c.evaluate(at))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(terms.windows(coeffs.len()).all(|w| {
            let mut acc = BigRational::zero();
            for (c, t) in coeffs.iter().zip(w) {
                acc += c * t;
            }
            acc.is_zero()
        }))
    }
}

impl fmt::Display for Annihilator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
