//! Constructors for the standard semi-fuzzy quantifiers.
//!
//! Every quantifier here is independent of the referential size: crisp
//! thresholds are expressed through step/interval shapes on counts and
//! graded quantifiers through fuzzy numbers on proportions.

use crate::error::FaError;
use crate::quantifier::{CardinalityFn, QuantifierKind, SemiFuzzyQuantifier};
use crate::sets::BooleanCombination;
use crate::shape::Shape;

fn unary_absolute(shape: Shape) -> SemiFuzzyQuantifier {
    SemiFuzzyQuantifier::new(
        1,
        vec![BooleanCombination::identity_unary()],
        CardinalityFn::AbsoluteCount(shape),
        QuantifierKind::Absolute,
    )
    .expect("unary absolute construction cannot fail")
}

fn binary_absolute(combination: BooleanCombination, shape: Shape) -> SemiFuzzyQuantifier {
    SemiFuzzyQuantifier::new(
        2,
        vec![combination],
        CardinalityFn::AbsoluteCount(shape),
        QuantifierKind::Absolute,
    )
    .expect("binary absolute construction cannot fail")
}

/// `exists(Y1) = (Y1 != ∅)`.
pub fn exists() -> SemiFuzzyQuantifier {
    unary_absolute(Shape::AtLeast { threshold: 1.0 })
}

/// `all(Y1, Y2) = (Y1 ⊆ Y2)`, i.e. `|Y1 ∩ ¬Y2| = 0`.
pub fn all() -> SemiFuzzyQuantifier {
    binary_absolute(
        BooleanCombination::atom_bits(&[true, false]),
        Shape::Interval { lo: 0.0, hi: 0.0 },
    )
}

/// `some(Y1, Y2) = (Y1 ∩ Y2 != ∅)`.
pub fn some() -> SemiFuzzyQuantifier {
    binary_absolute(
        BooleanCombination::atom_bits(&[true, true]),
        Shape::AtLeast { threshold: 1.0 },
    )
}

/// `no(Y1, Y2) = (Y1 ∩ Y2 = ∅)`; equals the internal negation of [`all`].
pub fn no() -> SemiFuzzyQuantifier {
    binary_absolute(
        BooleanCombination::atom_bits(&[true, true]),
        Shape::Interval { lo: 0.0, hi: 0.0 },
    )
}

/// `at_least_k(Y1) = (|Y1| >= k)`.
pub fn at_least_k(k: usize) -> SemiFuzzyQuantifier {
    unary_absolute(Shape::AtLeast {
        threshold: k as f64,
    })
}

/// `exactly_k(Y1) = (|Y1| = k)`.
pub fn exactly_k(k: usize) -> SemiFuzzyQuantifier {
    unary_absolute(Shape::Interval {
        lo: k as f64,
        hi: k as f64,
    })
}

/// `between(Y1) = (a <= |Y1| <= b)`.
pub fn between(a: usize, b: usize) -> Result<SemiFuzzyQuantifier, FaError> {
    if a > b {
        return Err(FaError::InvalidCatalogParams {
            name: "between".into(),
            reason: format!("lower bound {a} exceeds upper bound {b}"),
        });
    }
    Ok(unary_absolute(Shape::Interval {
        lo: a as f64,
        hi: b as f64,
    }))
}

/// A graded count quantifier such as "about 10": `q(j) = shape(j)` with a
/// trapezoidal (or other) fuzzy number over counts.
pub fn about_k(shape: Shape) -> Result<SemiFuzzyQuantifier, FaError> {
    shape.validate()?;
    Ok(unary_absolute(shape))
}

/// A unary proportional quantifier: `q(j) = shape(j / m)`.
pub fn unary_prop(shape: Shape) -> Result<SemiFuzzyQuantifier, FaError> {
    shape.validate()?;
    SemiFuzzyQuantifier::new(
        1,
        vec![BooleanCombination::identity_unary()],
        CardinalityFn::Proportion(shape),
        QuantifierKind::Proportional,
    )
}

/// A binary proportional quantifier in the canonical representation over
/// `Φ1 = Y1 ∩ Y2` and `Φ2 = Y1 ∩ ¬Y2`:
/// `q(i_1, i_2) = shape(i_1 / (i_1 + i_2))`, and 1 when `Y1 = ∅`.
pub fn binary_prop(shape: Shape) -> Result<SemiFuzzyQuantifier, FaError> {
    shape.validate()?;
    SemiFuzzyQuantifier::new(
        2,
        vec![
            BooleanCombination::atom_bits(&[true, true]),
            BooleanCombination::atom_bits(&[true, false]),
        ],
        CardinalityFn::RestrictedProportion(shape),
        QuantifierKind::Proportional,
    )
}

/// "Nearly all Y1 are Y2": the binary proportional quantifier with the
/// one-sided ramp `T_{0.5, 1, +inf, +inf}`, i.e.
/// `q(j, k) = max(2k/j - 1, 0)` on the conservative reading.
pub fn nearly_all() -> SemiFuzzyQuantifier {
    binary_prop(Shape::Trapezoid {
        a: 0.5,
        b: 1.0,
        c: f64::INFINITY,
        d: f64::INFINITY,
    })
    .expect("nearly_all construction cannot fail")
}

/// `identity(Y1) = |Y1| / m`.
pub fn identity() -> SemiFuzzyQuantifier {
    unary_prop(Shape::linear()).expect("identity construction cannot fail")
}

/// Looks a quantifier up by name with numeric parameters, for command-line
/// use. Shape-valued quantifiers take their shape as trapezoid parameters.
pub fn by_name(name: &str, params: &[f64]) -> Result<SemiFuzzyQuantifier, FaError> {
    let want = |n: usize| -> Result<(), FaError> {
        if params.len() != n {
            Err(FaError::InvalidCatalogParams {
                name: name.into(),
                reason: format!("expected {n} parameters, got {}", params.len()),
            })
        } else {
            Ok(())
        }
    };
    let as_count = |v: f64| -> Result<usize, FaError> {
        if v < 0.0 || v.fract() != 0.0 || !v.is_finite() {
            Err(FaError::InvalidCatalogParams {
                name: name.into(),
                reason: format!("{v} is not a nonnegative integer"),
            })
        } else {
            Ok(v as usize)
        }
    };
    match name {
        "exists" => {
            want(0)?;
            Ok(exists())
        }
        "all" => {
            want(0)?;
            Ok(all())
        }
        "some" => {
            want(0)?;
            Ok(some())
        }
        "no" => {
            want(0)?;
            Ok(no())
        }
        "at_least_k" => {
            want(1)?;
            Ok(at_least_k(as_count(params[0])?))
        }
        "exactly_k" => {
            want(1)?;
            Ok(exactly_k(as_count(params[0])?))
        }
        "between" => {
            want(2)?;
            between(as_count(params[0])?, as_count(params[1])?)
        }
        "about_k" => {
            want(4)?;
            about_k(Shape::Trapezoid {
                a: params[0],
                b: params[1],
                c: params[2],
                d: params[3],
            })
        }
        "unary_prop" => {
            want(4)?;
            unary_prop(Shape::Trapezoid {
                a: params[0],
                b: params[1],
                c: params[2],
                d: params[3],
            })
        }
        "binary_prop" => {
            want(4)?;
            binary_prop(Shape::Trapezoid {
                a: params[0],
                b: params[1],
                c: params[2],
                d: params[3],
            })
        }
        "nearly_all" => {
            want(0)?;
            Ok(nearly_all())
        }
        "identity" => {
            want(0)?;
            Ok(identity())
        }
        _ => Err(FaError::UnknownQuantifier(name.into())),
    }
}
