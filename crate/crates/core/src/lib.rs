//! Evaluation of fuzzy quantified sentences ("nearly all big houses are
//! expensive") under a probabilistic quantifier fuzzification mechanism.
//!
//! A semi-fuzzy quantifier assigns a truth degree to tuples of *crisp* sets.
//! Interpreting membership degrees as independent Bernoulli probabilities,
//! the fuzzified quantifier is the expectation of the semi-fuzzy quantifier
//! over random crisp representatives of the fuzzy arguments. This crate
//! provides:
//!
//! * exact evaluation — an exponential brute-force oracle plus polynomial
//!   dynamic programs over set cardinalities ([`exact`]);
//! * a seeded, partitionable Monte Carlo estimator ([`mc`]);
//! * the sigma-count limit model that the exact value converges to as the
//!   referential grows ([`limit`]);
//! * an executable suite of algebraic adequacy properties ([`verify`]).

pub mod catalog;
pub mod error;
pub mod exact;
pub mod limit;
pub mod mc;
pub mod quantifier;
pub mod sets;
pub mod shape;
pub mod verify;

pub use error::FaError;
pub use exact::{CardinalityDistribution, CardinalityTensor};
pub use quantifier::{CardinalityFn, QTable, QuantifierKind, SemiFuzzyQuantifier};
pub use sets::{AtomSignature, BooleanCombination, CrispSet, FuzzySet};
pub use shape::Shape;

/// Default memory budget for dense cardinality tensors (2 GiB).
pub const DEFAULT_TENSOR_MEM_CAP: usize = 2 << 30;

/// Hard cap on the brute-force oracle: enumeration costs `2^(n*m)`.
pub const ORACLE_BUDGET_BITS: u32 = 24;
