//! Numeric oracle: evaluates both sides of an identity exactly at random
//! integer points, without going through normal forms or annihilators.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lang::{Expr, Identity, LetBinding};
use crate::ring::{rational_pow, Assignment, RingError, Symbol};
use crate::sequences::{numeric_term, SequenceKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub trials: u32,
    pub seed: u64,
    /// Scalars and indices are drawn from `-range ..= range`.
    pub range: i64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 200,
            seed: 0,
            range: 9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error("range must be at least 1")]
    EmptyRange,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Zero-based trial number.
    pub trial: u32,
    pub scalars: Assignment,
    pub indices: Vec<(String, i64)>,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(
            f,
            "trial {}: {}; {}: lhs = {}, rhs = {}",
            self.trial,
            self.scalars,
            idx.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuzzOutcome {
    Pass { trials: u32 },
    Counterexample(Box<Counterexample>),
}

impl FuzzOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, FuzzOutcome::Pass { .. })
    }
}

/// Exact value of an expression at the given scalars and index values.
pub fn evaluate_expr(
    e: &Expr,
    lets: &[LetBinding],
    at: &Assignment,
    indices: &[i64],
) -> Result<BigRational, RingError> {
    let ev = |x: &Expr| evaluate_expr(x, lets, at, indices);
    Ok(match e {
        Expr::Int(v) => BigRational::from_integer(v.clone()),
        Expr::Scalar(s) => at.get(*s).clone(),
        Expr::Name(n) => {
            let b = lets
                .iter()
                .rev()
                .find(|b| b.name == *n)
                .unwrap_or_else(|| panic!("unbound name `{n}`"));
            evaluate_expr(&b.expr, lets, at, &[])?
        }
        Expr::Atom(a) => {
            let k = a.index.evaluate(indices);
            match a.kind {
                SequenceKind::GeoQ => {
                    at.check_q()?;
                    rational_pow(at.get(Symbol::Q), k)
                }
                kind => numeric_term(kind, k, at)?,
            }
        }
        Expr::Neg(x) => -ev(x)?,
        Expr::Add(x, y) => ev(x)? + ev(y)?,
        Expr::Sub(x, y) => ev(x)? - ev(y)?,
        Expr::Mul(x, y) => ev(x)? * ev(y)?,
        Expr::Pow(x, k) => Pow::pow(ev(x)?, *k),
    })
}

const DRAW_ORDER: [Symbol; 6] = [Symbol::P, Symbol::Q, Symbol::A, Symbol::B, Symbol::C, Symbol::D];

/// Compares both sides of `id` at `config.trials` random points. Pinned
/// scalars keep their pinned values; `q = 0` draws are redrawn.
pub fn fuzz(id: &Identity, config: &FuzzConfig) -> Result<FuzzOutcome, FuzzError> {
    if config.trials == 0 {
        return Err(FuzzError::NoTrials);
    }
    if config.range < 1 {
        return Err(FuzzError::EmptyRange);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let r = config.range;
    for trial in 0..config.trials {
        let mut at = Assignment::new();
        for s in DRAW_ORDER {
            let value: BigInt = match id.pin(s) {
                Some(v) => v.clone(),
                None => loop {
                    let v = rng.gen_range(-r..=r);
                    if s != Symbol::Q || v != 0 {
                        break v.into();
                    }
                },
            };
            at.set(s, BigRational::from_integer(value));
        }
        let indices: Vec<i64> = id.vars.iter().map(|_| rng.gen_range(-r..=r)).collect();
        let lhs = evaluate_expr(&id.lhs, &id.lets, &at, &indices)?;
        let rhs = evaluate_expr(&id.rhs, &id.lets, &at, &indices)?;
        if lhs != rhs {
            return Ok(FuzzOutcome::Counterexample(Box::new(Counterexample {
                trial,
                scalars: at,
                indices: id.vars.iter().cloned().zip(indices).collect(),
                lhs,
                rhs,
            })));
        }
    }
    Ok(FuzzOutcome::Pass {
        trials: config.trials,
    })
}
