//! Exact prover for identities among Horadam (generalized Fibonacci)
//! sequences.
//!
//! An identity `lhs == rhs` over integer index variables is proved by
//! finding one linear recurrence with index-independent coefficients that
//! annihilates `lhs - rhs` in a chosen index, instantiating that index at as
//! many points as the recurrence order, and recursing until no index is left.
//! The remaining closed terms are expanded into exact Laurent polynomials and
//! tested for zero. Every step is recorded in a [`prover::Certificate`].

pub mod cfinite;
pub mod cli;
pub mod lang;
pub mod matrix;
pub mod prover;
pub mod ring;
pub mod sequences;
pub mod upoly;

pub use cfinite::{Annihilator, AnnihilatorError};
pub use ring::{Assignment, LaurentPoly, Monomial, RingError, Symbol};
pub use sequences::{numeric_term, slope_annihilator, symbolic_term, SequenceKind};
