//! Recursive index elimination.
//!
//! For the next index variable, [`annihilator_for`] finds a recurrence of
//! order `d` with index-independent coefficients satisfied by every monomial
//! of the goal. Two sides satisfying one recurrence agree everywhere once
//! they agree at `d` consecutive points, so the goal is instantiated at
//! `0 .. d` and each instance is proved recursively. The constant term of
//! every annihilator is `±q^k`, a unit, so the recurrence also runs
//! backwards and a proof covers negative indices too. Index-free goals are
//! expanded into Laurent polynomials and tested for zero.

mod certificate;
mod fuzz;

use std::time::Instant;

use num_bigint::BigInt;
use thiserror::Error;

use crate::cfinite::Annihilator;
use crate::lang::{normalize_identity, Identity, NormalForm};
use crate::ring::{LaurentPoly, RingError, Symbol};
use crate::sequences::{slope_annihilator, TermCache};

pub use certificate::{Certificate, Elimination, Leaf, Subgoal, Verdict};
pub use fuzz::{evaluate_expr, fuzz, Counterexample, FuzzConfig, FuzzError, FuzzOutcome};

pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("annihilator order for `{index}` would reach {order}, above the cap {cap}")]
    OrderCapExceeded {
        index: String,
        order: usize,
        cap: usize,
    },
    #[error("elimination order {given:?} is not a permutation of the index variables {vars:?}")]
    BadEliminationOrder { given: Vec<String>, vars: Vec<String> },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProverConfig {
    pub max_order: usize,
    /// Eliminate indices in this order instead of declaration order.
    pub elimination_order: Option<Vec<String>>,
    /// Replace the order-4 Kronecker annihilator of a product of two atoms
    /// sharing an order-2 recurrence by its order-3 symmetric square.
    pub symmetric_squares: bool,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            max_order: DEFAULT_MAX_ORDER,
            elimination_order: None,
            symmetric_squares: true,
        }
    }
}

fn check_cap(index: &str, order: usize, cap: usize) -> Result<(), ProveError> {
    if order > cap {
        return Err(ProveError::OrderCapExceeded {
            index: index.to_string(),
            order,
            cap,
        });
    }
    Ok(())
}

/// Annihilator in index `var` of every monomial of `nf`, hence of `nf`.
///
/// Each monomial contributes the product closure of its atoms' slope
/// annihilators (atoms not involving `var` are constants, `x - 1`). The
/// distinct monomial annihilators are combined with the sum closure.
/// `var_name` is used for error reporting only.
pub fn annihilator_for(
    nf: &NormalForm,
    var: usize,
    var_name: &str,
    config: &ProverConfig,
) -> Result<Annihilator, ProveError> {
    let mut distinct: Vec<Annihilator> = Vec::new();
    for (atoms, _) in nf.monomials() {
        let mut singles: Vec<Annihilator> = atoms
            .iter()
            .filter(|a| a.index.coeff(var) != 0)
            .map(|a| slope_annihilator(a.kind, a.index.coeff(var)))
            .collect();
        let mut factors = Vec::new();
        if config.symmetric_squares {
            let mut pending: Vec<Annihilator> = Vec::new();
            for a in singles.drain(..) {
                if a.order() != 2 {
                    factors.push(a);
                } else if let Some(pos) = pending.iter().position(|b| *b == a) {
                    pending.swap_remove(pos);
                    factors.push(a.symmetric_square().expect("order checked"));
                } else {
                    pending.push(a);
                }
            }
            factors.extend(pending);
        } else {
            factors = singles;
        }
        let mut acc = Annihilator::constant();
        for f in &factors {
            check_cap(var_name, acc.order() * f.order(), config.max_order)?;
            acc = acc.product(f);
        }
        if !distinct.contains(&acc) {
            distinct.push(acc);
        }
    }
    let mut iter = distinct.into_iter();
    let Some(mut total) = iter.next() else {
        return Ok(Annihilator::constant());
    };
    for a in iter {
        check_cap(var_name, total.order() + a.order(), config.max_order)?;
        total = total.sum(&a);
    }
    Ok(total)
}

struct Run<'a> {
    id: &'a Identity,
    order: Vec<usize>,
    config: &'a ProverConfig,
    pins: Vec<(Symbol, BigInt)>,
    cache: TermCache,
    leaves: Vec<Leaf>,
}

impl Run<'_> {
    fn node(&mut self, nf: &NormalForm, depth: usize, path: &mut Vec<(String, i64)>) -> Result<Elimination, ProveError> {
        let var = self.order[depth];
        let name = self.id.vars[var].clone();
        let ann = annihilator_for(nf, var, &name, self.config)?;
        assert!(
            ann.has_unit_constant(),
            "annihilator {ann} has a non-unit constant term"
        );
        let mut subgoals = Vec::with_capacity(ann.order());
        for value in 0..ann.order() as i64 {
            let child = nf.substitute_index(var, value);
            path.push((name.clone(), value));
            let (elimination, leaf) = if depth + 1 < self.order.len() {
                (Some(Box::new(self.node(&child, depth + 1, path)?)), None)
            } else {
                (None, Some(self.leaf(&child, path)?))
            };
            path.pop();
            subgoals.push(Subgoal {
                value,
                goal: child.render(&self.id.vars),
                normal_form: child,
                elimination,
                leaf,
            });
        }
        Ok(Elimination {
            index: name,
            order: ann.order(),
            charpoly: ann.to_string(),
            annihilator: ann,
            subgoals,
        })
    }

    fn leaf(&mut self, nf: &NormalForm, path: &[(String, i64)]) -> Result<usize, ProveError> {
        assert!(nf.is_index_free(), "leaf goal still depends on an index");
        let mut poly = LaurentPoly::zero();
        for (atoms, scalar) in nf.monomials() {
            let mut term = scalar.clone();
            for a in atoms {
                term = &term * &self.cache.get(a.kind, a.index.constant);
            }
            poly += &term;
        }
        if !self.pins.is_empty() {
            poly = poly.clear_q_denominator().specialize(&self.pins)?;
        }
        let at = path
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        self.leaves.push(Leaf {
            at,
            values: path.to_vec(),
            polynomial: poly.to_string(),
            zero: poly.is_zero(),
            poly,
        });
        Ok(self.leaves.len() - 1)
    }
}

fn resolve_order(id: &Identity, config: &ProverConfig) -> Result<Vec<usize>, ProveError> {
    let Some(names) = &config.elimination_order else {
        return Ok((0..id.vars.len()).collect());
    };
    let bad = || ProveError::BadEliminationOrder {
        given: names.clone(),
        vars: id.vars.clone(),
    };
    if names.len() != id.vars.len() {
        return Err(bad());
    }
    let mut order = Vec::with_capacity(names.len());
    for n in names {
        let i = id.var_index(n).ok_or_else(bad)?;
        if order.contains(&i) {
            return Err(bad());
        }
        order.push(i);
    }
    Ok(order)
}

/// Proves or refutes `id`.
///
/// An annihilator above the order cap yields an [`Verdict::Aborted`]
/// certificate; a malformed elimination order is an error.
pub fn prove(id: &Identity, config: &ProverConfig) -> Result<Certificate, ProveError> {
    let start = Instant::now();
    let order = resolve_order(id, config)?;
    let nf = normalize_identity(id);
    let mut run = Run {
        id,
        order: order.clone(),
        config,
        pins: id.pins.clone(),
        cache: TermCache::new(),
        leaves: Vec::new(),
    };
    let result = run.node(&nf, 0, &mut Vec::new());
    let (elimination, leaves, verdict) = match result {
        Ok(root) => {
            let verdict = match run.leaves.iter().position(|l| !l.zero) {
                None => Verdict::Proved,
                Some(witness) => Verdict::Refuted { witness },
            };
            (Some(root), run.leaves, verdict)
        }
        Err(e @ ProveError::OrderCapExceeded { .. }) => (
            None,
            Vec::new(),
            Verdict::Aborted {
                reason: e.to_string(),
            },
        ),
        Err(e) => return Err(e),
    };
    Ok(Certificate {
        identity: id.source.clone(),
        elimination_order: order.iter().map(|&i| id.vars[i].clone()).collect(),
        goal: nf.render(&id.vars),
        elimination,
        leaves,
        verdict,
        ms: None,
        elapsed: start.elapsed(),
    })
}
