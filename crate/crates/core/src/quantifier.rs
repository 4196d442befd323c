//! Semi-fuzzy quantifiers in quantitative form.
//!
//! A quantitative quantifier of arity `n` is represented by `K` boolean
//! combinations of its arguments plus a cardinality function `q` mapping the
//! combination cardinalities `(i_1 .. i_K)` to `[0,1]`. Evaluating the
//! quantifier on crisp sets reduces to computing those cardinalities and
//! applying `q`.

use crate::error::FaError;
use crate::sets::{BooleanCombination, CrispSet};
use crate::shape::Shape;

/// Whether the quantifier reads cardinalities as raw counts or proportions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantifierKind {
    Absolute,
    Proportional,
}

/// A dense tabulation of `q` over `{0..extent-1}^K`, row-major with axis 0
/// fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    extents: Vec<usize>,
    values: Vec<f64>,
}

impl QTable {
    pub fn new(extents: Vec<usize>, values: Vec<f64>) -> Result<Self, FaError> {
        let expected: usize = extents.iter().product();
        if extents.is_empty() || values.len() != expected {
            return Err(FaError::InvalidShape(format!(
                "q-table has {} values, extents {:?} require {}",
                values.len(),
                extents,
                expected
            )));
        }
        for &v in &values {
            if !(0.0..=1.0).contains(&v) {
                return Err(FaError::DegreeOutOfRange(v));
            }
        }
        Ok(Self { extents, values })
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, cards: &[usize]) -> Result<f64, FaError> {
        if cards.len() != self.extents.len() {
            return Err(FaError::ArityMismatch {
                expected: self.extents.len(),
                got: cards.len(),
            });
        }
        let mut idx = 0;
        let mut stride = 1;
        for (i, (&c, &e)) in cards.iter().zip(&self.extents).enumerate() {
            if c >= e {
                return Err(FaError::CardinalityOutOfRange { index: c, m: e - 1 });
            }
            let _ = i;
            idx += c * stride;
            stride *= e;
        }
        Ok(self.values[idx])
    }
}

/// The cardinality function `q` of a quantitative quantifier, in one of the
/// standard parameterizations.
#[derive(Debug, Clone, PartialEq)]
pub enum CardinalityFn {
    /// `q(i_1) = shape(i_1)`; one combination, counts domain.
    AbsoluteCount(Shape),
    /// `q(i_1) = shape(i_1 / m)`; one combination, proportions domain.
    Proportion(Shape),
    /// Canonical binary proportional form over the combinations
    /// `Φ1 = Y1 ∩ Y2` and `Φ2 = Y1 ∩ ¬Y2`:
    /// `q(i_1, i_2) = shape(i_1 / (i_1 + i_2))`, with the empty-restrictor
    /// value when `i_1 + i_2 = 0`.
    RestrictedProportion(Shape),
    /// Conservative form over the combinations `Φ1 = Y1`, `Φ2 = Y1 ∩ Y2`:
    /// `q(j, k) = shape(k / j)`, empty-restrictor value when `j = 0`.
    ConservativeRatio(Shape),
    /// Direct tabulation over cardinality tuples.
    Table(QTable),
}

/// An n-ary semi-fuzzy quantifier in quantitative representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiFuzzyQuantifier {
    arity: usize,
    combinations: Vec<BooleanCombination>,
    q: CardinalityFn,
    kind: QuantifierKind,
    empty_restrictor_value: f64,
    /// External negation is kept as a flag so double negation restores the
    /// quantifier structurally, not just numerically.
    negated: bool,
}

impl SemiFuzzyQuantifier {
    pub fn new(
        arity: usize,
        combinations: Vec<BooleanCombination>,
        q: CardinalityFn,
        kind: QuantifierKind,
    ) -> Result<Self, FaError> {
        if arity == 0 || combinations.is_empty() {
            return Err(FaError::InvalidShape(
                "quantifier needs arity >= 1 and at least one combination".into(),
            ));
        }
        for c in &combinations {
            if c.arity() != arity {
                return Err(FaError::ArityMismatch {
                    expected: arity,
                    got: c.arity(),
                });
            }
        }
        match &q {
            CardinalityFn::AbsoluteCount(s) | CardinalityFn::Proportion(s) => {
                s.validate()?;
                if combinations.len() != 1 {
                    return Err(FaError::InvalidShape(
                        "count/proportion q requires exactly one combination".into(),
                    ));
                }
            }
            CardinalityFn::RestrictedProportion(s) | CardinalityFn::ConservativeRatio(s) => {
                s.validate()?;
                if combinations.len() != 2 {
                    return Err(FaError::InvalidShape(
                        "ratio q requires exactly two combinations".into(),
                    ));
                }
            }
            CardinalityFn::Table(t) => {
                if t.extents().len() != combinations.len() {
                    return Err(FaError::ArityMismatch {
                        expected: combinations.len(),
                        got: t.extents().len(),
                    });
                }
            }
        }
        Ok(Self {
            arity,
            combinations,
            q,
            kind,
            empty_restrictor_value: 1.0,
            negated: false,
        })
    }

    /// Overrides the value returned when a proportional denominator is zero.
    /// Every definition in the standard catalog uses 1.
    pub fn with_empty_restrictor_value(mut self, v: f64) -> Result<Self, FaError> {
        if !(0.0..=1.0).contains(&v) {
            return Err(FaError::DegreeOutOfRange(v));
        }
        self.empty_restrictor_value = v;
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_combinations(&self) -> usize {
        self.combinations.len()
    }

    pub fn combinations(&self) -> &[BooleanCombination] {
        &self.combinations
    }

    pub fn cardinality_fn(&self) -> &CardinalityFn {
        &self.q
    }

    pub fn kind(&self) -> QuantifierKind {
        self.kind
    }

    pub fn empty_restrictor_value(&self) -> f64 {
        self.empty_restrictor_value
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// True for an arity-1 quantifier over the identity combination.
    pub fn is_unary_identity(&self) -> bool {
        self.arity == 1
            && self.combinations.len() == 1
            && self.combinations[0] == BooleanCombination::identity_unary()
    }

    /// True when the quantifier can be read as `q(|Y1|, |Y1 ∩ Y2|)` and
    /// evaluated by the specialized binary conservative kernel.
    pub fn is_conservative_binary(&self) -> bool {
        if self.arity != 2 {
            return false;
        }
        match &self.q {
            CardinalityFn::RestrictedProportion(_) => {
                self.combinations
                    == vec![
                        BooleanCombination::atom_bits(&[true, true]),
                        BooleanCombination::atom_bits(&[true, false]),
                    ]
            }
            CardinalityFn::ConservativeRatio(_) => {
                self.combinations
                    == vec![
                        BooleanCombination::new(2, vec![false, true, false, true]).unwrap(),
                        BooleanCombination::atom_bits(&[true, true]),
                    ]
            }
            _ => false,
        }
    }

    /// `q(|Y1|, |Y1 ∩ Y2|)` for conservative-representable quantifiers.
    pub fn conservative_q(&self, card_y1: usize, card_y1y2: usize) -> Result<f64, FaError> {
        if !self.is_conservative_binary() {
            return Err(FaError::NotConservative);
        }
        let shape = match &self.q {
            CardinalityFn::RestrictedProportion(s) | CardinalityFn::ConservativeRatio(s) => s,
            _ => unreachable!(),
        };
        let base = if card_y1 == 0 {
            self.empty_restrictor_value
        } else {
            shape.eval(card_y1y2 as f64 / card_y1 as f64)
        };
        Ok(self.finish(base))
    }

    /// Evaluates `q` at a tuple of combination cardinalities for referential
    /// size `m`.
    pub fn apply_q(&self, cards: &[usize], m: usize) -> Result<f64, FaError> {
        if cards.len() != self.combinations.len() {
            return Err(FaError::ArityMismatch {
                expected: self.combinations.len(),
                got: cards.len(),
            });
        }
        for &c in cards {
            if c > m {
                return Err(FaError::CardinalityOutOfRange { index: c, m });
            }
        }
        let base = match &self.q {
            CardinalityFn::AbsoluteCount(s) => s.eval(cards[0] as f64),
            CardinalityFn::Proportion(s) => s.eval(cards[0] as f64 / m as f64),
            CardinalityFn::RestrictedProportion(s) => {
                let den = cards[0] + cards[1];
                if den == 0 {
                    self.empty_restrictor_value
                } else {
                    s.eval(cards[0] as f64 / den as f64)
                }
            }
            CardinalityFn::ConservativeRatio(s) => {
                if cards[0] == 0 {
                    self.empty_restrictor_value
                } else {
                    s.eval(cards[1] as f64 / cards[0] as f64)
                }
            }
            CardinalityFn::Table(t) => t.get(cards)?,
        };
        Ok(self.finish(base))
    }

    /// The normalized cardinality function `q'` evaluated at a tuple of
    /// proportions in `[0,1]`. Undefined for count-domain and tabulated `q`.
    pub fn apply_q_prime(&self, proportions: &[f64]) -> Result<f64, FaError> {
        if proportions.len() != self.combinations.len() {
            return Err(FaError::ArityMismatch {
                expected: self.combinations.len(),
                got: proportions.len(),
            });
        }
        let base = match &self.q {
            CardinalityFn::Proportion(s) => s.eval(proportions[0]),
            CardinalityFn::RestrictedProportion(s) => {
                let den = proportions[0] + proportions[1];
                if den < 1e-15 {
                    self.empty_restrictor_value
                } else {
                    s.eval(proportions[0] / den)
                }
            }
            CardinalityFn::ConservativeRatio(s) => {
                if proportions[0] < 1e-15 {
                    self.empty_restrictor_value
                } else {
                    s.eval(proportions[1] / proportions[0])
                }
            }
            CardinalityFn::AbsoluteCount(_) | CardinalityFn::Table(_) => {
                return Err(FaError::NoProportionalForm)
            }
        };
        Ok(self.finish(base))
    }

    /// Evaluates the semi-fuzzy quantifier directly on crisp arguments.
    pub fn apply_to_crisp(&self, sets: &[CrispSet]) -> Result<f64, FaError> {
        if sets.len() != self.arity {
            return Err(FaError::ArityMismatch {
                expected: self.arity,
                got: sets.len(),
            });
        }
        let m = sets[0].len();
        let cards: Vec<usize> = self
            .combinations
            .iter()
            .map(|c| c.crisp_cardinality(sets))
            .collect::<Result<_, _>>()?;
        self.apply_q(&cards, m)
    }

    fn finish(&self, base: f64) -> f64 {
        if self.negated {
            1.0 - base
        } else {
            base
        }
    }

    /// External negation `¬Q`: `q ↦ 1 - q`. Involutive by construction.
    pub fn negate_external(&self) -> Self {
        let mut out = self.clone();
        out.negated = !out.negated;
        out
    }

    /// Internal negation (antonym) `Q¬(Y_1..Y_n) = Q(Y_1..¬Y_n)`:
    /// complements the last argument inside every combination.
    pub fn negate_internal(&self) -> Self {
        let mut out = self.clone();
        out.combinations = self
            .combinations
            .iter()
            .map(|c| c.complement_last_argument())
            .collect();
        out
    }

    /// Dual `Q□ = ¬(Q¬)`.
    pub fn dual(&self) -> Self {
        self.negate_internal().negate_external()
    }

    /// Exchanges arguments `i` and `j` (0-based) in every combination.
    pub fn transpose_args(&self, i: usize, j: usize) -> Result<Self, FaError> {
        if i >= self.arity || j >= self.arity {
            return Err(FaError::ArityMismatch {
                expected: self.arity,
                got: i.max(j) + 1,
            });
        }
        let mut out = self.clone();
        out.combinations = self
            .combinations
            .iter()
            .map(|c| c.transpose_arguments(i, j))
            .collect();
        Ok(out)
    }
}

/// Builds a family of unary proportional quantifiers from shapes forming a
/// partition of unity on `[0,1]`. The partition condition is validated on a
/// dense grid; the resulting quantifier values then sum to 1 for every
/// cardinality tuple.
pub fn ruspini_partition(shapes: &[Shape]) -> Result<Vec<SemiFuzzyQuantifier>, FaError> {
    const GRID: usize = 1000;
    for s in shapes {
        s.validate()?;
    }
    if shapes.is_empty() {
        return Err(FaError::InvalidPartition { x: 0.0, sum: 0.0 });
    }
    for k in 0..=GRID {
        let x = k as f64 / GRID as f64;
        let sum: f64 = shapes.iter().map(|s| s.eval(x)).sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(FaError::InvalidPartition { x, sum });
        }
    }
    shapes
        .iter()
        .map(|s| {
            SemiFuzzyQuantifier::new(
                1,
                vec![BooleanCombination::identity_unary()],
                CardinalityFn::Proportion(s.clone()),
                QuantifierKind::Proportional,
            )
        })
        .collect()
}
