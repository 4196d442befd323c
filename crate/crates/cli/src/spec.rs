//! On-disk JSON formats: quantifier specs, fuzzy-set files, membership
//! profiles, and ranking inputs.
//!
//! Trapezoid parameters use `null` for the infinite end points, since JSON
//! has no infinity literal: `a`/`b` default to -inf and `c`/`d` to +inf.

use serde::{Deserialize, Serialize};

use fa_quant::limit::MembershipProfile;
use fa_quant::{
    BooleanCombination, CardinalityFn, FaError, FuzzySet, QTable, QuantifierKind,
    SemiFuzzyQuantifier, Shape,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    Trapezoid {
        a: Option<f64>,
        b: Option<f64>,
        c: Option<f64>,
        d: Option<f64>,
    },
    S {
        alpha: f64,
        gamma: f64,
    },
    Table {
        values: Vec<f64>,
    },
    AtLeast {
        threshold: f64,
    },
    Interval {
        lo: f64,
        hi: f64,
    },
}

impl ShapeSpec {
    pub fn to_shape(&self) -> Result<Shape, FaError> {
        let shape = match self {
            ShapeSpec::Trapezoid { a, b, c, d } => Shape::Trapezoid {
                a: a.unwrap_or(f64::NEG_INFINITY),
                b: b.unwrap_or(f64::NEG_INFINITY),
                c: c.unwrap_or(f64::INFINITY),
                d: d.unwrap_or(f64::INFINITY),
            },
            ShapeSpec::S { alpha, gamma } => Shape::SShape {
                alpha: *alpha,
                gamma: *gamma,
            },
            ShapeSpec::Table { values } => Shape::Tabulated {
                values: values.clone(),
            },
            ShapeSpec::AtLeast { threshold } => Shape::AtLeast {
                threshold: *threshold,
            },
            ShapeSpec::Interval { lo, hi } => Shape::Interval { lo: *lo, hi: *hi },
        };
        shape.validate()?;
        Ok(shape)
    }

    pub fn from_shape(shape: &Shape) -> Self {
        let finite = |v: f64| v.is_finite().then_some(v);
        match shape {
            Shape::Trapezoid { a, b, c, d } => ShapeSpec::Trapezoid {
                a: finite(*a),
                b: finite(*b),
                c: finite(*c),
                d: finite(*d),
            },
            Shape::SShape { alpha, gamma } => ShapeSpec::S {
                alpha: *alpha,
                gamma: *gamma,
            },
            Shape::Tabulated { values } => ShapeSpec::Table {
                values: values.clone(),
            },
            Shape::AtLeast { threshold } => ShapeSpec::AtLeast {
                threshold: *threshold,
            },
            Shape::Interval { lo, hi } => ShapeSpec::Interval { lo: *lo, hi: *hi },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QTableSpec {
    pub extents: Vec<usize>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuantifierSpec {
    /// Unary quantifier over the raw cardinality: `q(j) = shape(j)`.
    Absolute { shape: ShapeSpec },
    /// Unary quantifier over the proportion: `q(j) = shape(j/m)`.
    UnaryProp { shape: ShapeSpec },
    /// Binary proportional quantifier over `(|Y1∩Y2|, |Y1∩¬Y2|)`.
    BinaryProp {
        shape: ShapeSpec,
        #[serde(skip_serializing_if = "Option::is_none")]
        empty_restrictor_value: Option<f64>,
    },
    /// Binary quantifier over `(|Y1|, |Y1∩Y2|)`: `q(j,k) = shape(k/j)`.
    BinaryConservative {
        shape: ShapeSpec,
        #[serde(skip_serializing_if = "Option::is_none")]
        empty_restrictor_value: Option<f64>,
    },
    /// Arbitrary quantitative quantifier: truth tables over the membership
    /// atoms plus a dense q-table over the combination cardinalities.
    General {
        arity: usize,
        combinations: Vec<Vec<bool>>,
        q_table: QTableSpec,
    },
}

impl QuantifierSpec {
    pub fn to_quantifier(&self) -> Result<SemiFuzzyQuantifier, FaError> {
        match self {
            QuantifierSpec::Absolute { shape } => SemiFuzzyQuantifier::new(
                1,
                vec![BooleanCombination::identity_unary()],
                CardinalityFn::AbsoluteCount(shape.to_shape()?),
                QuantifierKind::Absolute,
            ),
            QuantifierSpec::UnaryProp { shape } => SemiFuzzyQuantifier::new(
                1,
                vec![BooleanCombination::identity_unary()],
                CardinalityFn::Proportion(shape.to_shape()?),
                QuantifierKind::Proportional,
            ),
            QuantifierSpec::BinaryProp {
                shape,
                empty_restrictor_value,
            } => {
                let q = SemiFuzzyQuantifier::new(
                    2,
                    vec![
                        BooleanCombination::atom_bits(&[true, true]),
                        BooleanCombination::atom_bits(&[true, false]),
                    ],
                    CardinalityFn::RestrictedProportion(shape.to_shape()?),
                    QuantifierKind::Proportional,
                )?;
                match empty_restrictor_value {
                    Some(v) => q.with_empty_restrictor_value(*v),
                    None => Ok(q),
                }
            }
            QuantifierSpec::BinaryConservative {
                shape,
                empty_restrictor_value,
            } => {
                let q = SemiFuzzyQuantifier::new(
                    2,
                    vec![
                        BooleanCombination::new(2, vec![false, true, false, true])?,
                        BooleanCombination::atom_bits(&[true, true]),
                    ],
                    CardinalityFn::ConservativeRatio(shape.to_shape()?),
                    QuantifierKind::Proportional,
                )?;
                match empty_restrictor_value {
                    Some(v) => q.with_empty_restrictor_value(*v),
                    None => Ok(q),
                }
            }
            QuantifierSpec::General {
                arity,
                combinations,
                q_table,
            } => {
                let combos = combinations
                    .iter()
                    .map(|t| BooleanCombination::new(*arity, t.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                let table = QTable::new(q_table.extents.clone(), q_table.values.clone())?;
                SemiFuzzyQuantifier::new(
                    *arity,
                    combos,
                    CardinalityFn::Table(table),
                    QuantifierKind::Absolute,
                )
            }
        }
    }

    /// The normalized spec a parsed quantifier serializes back to.
    pub fn from_quantifier(q: &SemiFuzzyQuantifier) -> Self {
        match q.cardinality_fn() {
            CardinalityFn::AbsoluteCount(s) => QuantifierSpec::Absolute {
                shape: ShapeSpec::from_shape(s),
            },
            CardinalityFn::Proportion(s) => QuantifierSpec::UnaryProp {
                shape: ShapeSpec::from_shape(s),
            },
            CardinalityFn::RestrictedProportion(s) => QuantifierSpec::BinaryProp {
                shape: ShapeSpec::from_shape(s),
                empty_restrictor_value: Some(q.empty_restrictor_value()),
            },
            CardinalityFn::ConservativeRatio(s) => QuantifierSpec::BinaryConservative {
                shape: ShapeSpec::from_shape(s),
                empty_restrictor_value: Some(q.empty_restrictor_value()),
            },
            CardinalityFn::Table(t) => QuantifierSpec::General {
                arity: q.arity(),
                combinations: q
                    .combinations()
                    .iter()
                    .map(|c| c.truth_table().to_vec())
                    .collect(),
                q_table: QTableSpec {
                    extents: t.extents().to_vec(),
                    values: t.values().to_vec(),
                },
            },
        }
    }
}

/// A fuzzy-set file: either a flat array of degrees or an object with
/// `memberships` and optional element `labels`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FuzzySetFile {
    Flat(Vec<f64>),
    Labeled {
        memberships: Vec<f64>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

impl FuzzySetFile {
    pub fn to_set(&self) -> Result<FuzzySet, String> {
        let memberships = match self {
            FuzzySetFile::Flat(v) => v,
            FuzzySetFile::Labeled {
                memberships,
                labels,
            } => {
                if let Some(labels) = labels {
                    if labels.len() != memberships.len() {
                        return Err(format!(
                            "{} labels for {} memberships",
                            labels.len(),
                            memberships.len()
                        ));
                    }
                }
                memberships
            }
        };
        FuzzySet::new(memberships.clone()).map_err(|e| e.to_string())
    }
}

/// One membership profile per quantifier argument, for convergence tables.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSpec {
    Constant(f64),
    Cycle(Vec<f64>),
}

impl ProfileSpec {
    pub fn to_profile(&self) -> MembershipProfile {
        match self {
            ProfileSpec::Constant(v) => MembershipProfile::Constant(*v),
            ProfileSpec::Cycle(vals) => MembershipProfile::Cycle(vals.clone()),
        }
    }
}

/// One object to rank: an id plus its criterion satisfaction degrees.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankObject {
    pub id: String,
    pub criteria: Vec<f64>,
}
