//! The sigma-count limit model and convergence tables.
//!
//! As the referential grows, the cardinality proportions of random crisp
//! representatives concentrate at the mean memberships, so the exact
//! expectation converges to the normalized cardinality function `q'`
//! evaluated at those averages. For unary proportional quantifiers this is
//! the classic sigma-count model `shape(mean(mu))`; for binary proportional
//! ones it is `shape(sum(mu1*mu2) / sum(mu1))`.

use crate::error::FaError;
use crate::exact::eval_exact;
use crate::mc::{mc_eval, McConfig};
use crate::quantifier::SemiFuzzyQuantifier;
use crate::sets::FuzzySet;
use crate::shape::Shape;

/// `q'` at the mean memberships of the boolean combinations; the value the
/// exact evaluation converges to as the referential grows.
pub fn limit_eval(q: &SemiFuzzyQuantifier, sets: &[FuzzySet]) -> Result<f64, FaError> {
    if sets.len() != q.arity() {
        return Err(FaError::ArityMismatch {
            expected: q.arity(),
            got: sets.len(),
        });
    }
    let means: Vec<f64> = q
        .combinations()
        .iter()
        .map(|c| c.combine(sets).map(|s| s.mean()))
        .collect::<Result<_, _>>()?;
    q.apply_q_prime(&means)
}

/// Sigma-count model for a unary proportional shape: `shape(mean(mu))`.
pub fn zadeh_unary(shape: &Shape, x: &FuzzySet) -> f64 {
    shape.eval(x.mean())
}

/// Sigma-count model for a binary proportional shape:
/// `shape(sum(mu1*mu2) / sum(mu1))`, or 1 when the restrictor is empty.
pub fn zadeh_binary(shape: &Shape, x1: &FuzzySet, x2: &FuzzySet) -> Result<f64, FaError> {
    if x1.len() != x2.len() {
        return Err(FaError::LengthMismatch(x1.len(), x2.len()));
    }
    let num: f64 = x1
        .memberships()
        .iter()
        .zip(x2.memberships())
        .map(|(a, b)| a * b)
        .sum();
    let den: f64 = x1.memberships().iter().sum();
    if den < 1e-15 {
        Ok(1.0)
    } else {
        Ok(shape.eval(num / den))
    }
}

/// One referential size in a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    pub exact: f64,
    pub zadeh: f64,
    /// Monte Carlo estimate at this size, when requested.
    pub mc: Option<f64>,
    /// `|exact - zadeh|`.
    pub abs_error: f64,
}

/// A membership pattern that scales to any referential size.
#[derive(Debug, Clone, PartialEq)]
pub enum MembershipProfile {
    /// Every element gets the same degree.
    Constant(f64),
    /// Degrees repeat cyclically.
    Cycle(Vec<f64>),
}

impl MembershipProfile {
    pub fn materialize(&self, m: usize) -> Result<FuzzySet, FaError> {
        match self {
            MembershipProfile::Constant(v) => FuzzySet::constant(*v, m),
            MembershipProfile::Cycle(vals) => {
                if vals.is_empty() {
                    return Err(FaError::EmptyReferential);
                }
                FuzzySet::new((0..m).map(|i| vals[i % vals.len()]).collect())
            }
        }
    }
}

/// Evaluates the quantifier exactly and in the limit model over a family of
/// growing referentials built from per-argument membership profiles.
pub fn convergence_table(
    q: &SemiFuzzyQuantifier,
    profiles: &[MembershipProfile],
    sizes: &[usize],
    mc: Option<&McConfig>,
) -> Result<Vec<ConvergenceRow>, FaError> {
    if profiles.len() != q.arity() {
        return Err(FaError::ArityMismatch {
            expected: q.arity(),
            got: profiles.len(),
        });
    }
    sizes
        .iter()
        .map(|&m| {
            let sets: Vec<FuzzySet> = profiles
                .iter()
                .map(|p| p.materialize(m))
                .collect::<Result<_, _>>()?;
            let exact = eval_exact(q, &sets)?;
            let zadeh = limit_eval(q, &sets)?;
            let mc_value = match mc {
                Some(cfg) => Some(mc_eval(q, &sets, cfg)?.value),
                None => None,
            };
            Ok(ConvergenceRow {
                m,
                exact,
                zadeh,
                mc: mc_value,
                abs_error: (exact - zadeh).abs(),
            })
        })
        .collect()
}
