//! Univariate polynomials in `x` with [`LaurentPoly`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::LaurentPoly;

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<LaurentPoly>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![LaurentPoly::zero(), LaurentPoly::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: LaurentPoly) -> Self {
        Self::from_coeffs(vec![-r, LaurentPoly::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// Builds from coefficients listed highest degree first.
    pub fn from_coeffs_high(high_first: Vec<LaurentPoly>) -> Self {
        let mut coeffs = high_first;
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> LaurentPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&LaurentPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &LaurentPoly) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division with remainder by a monic divisor.
    ///
    /// Panics if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![LaurentPoly::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                let t = &lead * d;
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
            quot[i - dd] = lead;
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Canonical rendering in the variable `x`, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match deg {
                0 => String::new(),
                1 => var.to_string(),
                d => format!("{var}^{d}"),
            };
            let (negative, body) = if c.len() == 1 {
                let neg = c.terms().next().is_some_and(|(_, v)| v.sign() == num_bigint::Sign::Minus);
                let mag = if neg { -c } else { c.clone() };
                let body = if deg == 0 {
                    mag.to_string()
                } else if mag.is_one() {
                    power.clone()
                } else {
                    format!("{mag}*{power}")
                };
                (neg, body)
            } else if deg == 0 {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{power}"))
            };
            match (first, negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
            first = false;
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Symbol;

    fn sym(s: Symbol) -> LaurentPoly {
        LaurentPoly::symbol(s)
    }

    fn companion_poly() -> UPoly {
        UPoly::from_coeffs(vec![sym(Symbol::Q), -sym(Symbol::P), LaurentPoly::one()])
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(companion_poly().to_string(), "x^2 - p*x + q");
        let lin = UPoly::linear_root(LaurentPoly::q_pow(-1));
        assert_eq!(lin.to_string(), "x - q^-1");
        let c = UPoly::from_coeffs(vec![
            LaurentPoly::zero(),
            &sym(Symbol::P) - &sym(Symbol::Q),
            LaurentPoly::one(),
        ]);
        assert_eq!(c.to_string(), "x^2 + (p - q)*x");
    }

    #[test]
    fn exact_division_by_factor() {
        let f = companion_poly();
        let g = UPoly::linear_root(sym(Symbol::Q));
        let prod = &f * &g;
        let (quot, rem) = prod.div_rem_monic(&g);
        assert!(rem.is_zero());
        assert_eq!(quot, f);
        let (_, rem) = (&prod + &UPoly::one()).div_rem_monic(&f);
        assert_eq!(rem, UPoly::one());
    }
}
