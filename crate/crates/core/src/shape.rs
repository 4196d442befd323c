//! Fuzzy numbers used as support functions of semi-fuzzy quantifiers.

use crate::error::FaError;

/// A fuzzy number over the reals (or over `[0,1]` for proportional use).
///
/// `Trapezoid` parameters may be infinite to express one-sided ramps, e.g.
/// `T_{0.5,0.6,+inf,+inf}` is a rising ramp that never decays.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// The ordinary trapezoidal fuzzy number `T_{a,b,c,d}`, `a <= b <= c <= d`.
    Trapezoid { a: f64, b: f64, c: f64, d: f64 },
    /// The quadratic S fuzzy number `S_{alpha,gamma}`, `alpha < gamma`.
    SShape { alpha: f64, gamma: f64 },
    /// Crisp step: 1 iff `x >= threshold`.
    AtLeast { threshold: f64 },
    /// Crisp window: 1 iff `lo <= x <= hi`. `Interval{k,k}` is "exactly k".
    Interval { lo: f64, hi: f64 },
    /// Values sampled on a uniform grid over `[0,1]`; evaluation snaps `x`
    /// to the nearest grid point.
    Tabulated { values: Vec<f64> },
}

impl Shape {
    pub fn validate(&self) -> Result<(), FaError> {
        match self {
            Shape::Trapezoid { a, b, c, d } => {
                let ok = !a.is_nan()
                    && !b.is_nan()
                    && !c.is_nan()
                    && !d.is_nan()
                    && a <= b
                    && b <= c
                    && c <= d;
                if !ok {
                    return Err(FaError::InvalidShape(format!(
                        "trapezoid requires a <= b <= c <= d, got ({a}, {b}, {c}, {d})"
                    )));
                }
            }
            Shape::SShape { alpha, gamma } => {
                if !alpha.is_finite() || !gamma.is_finite() || alpha >= gamma {
                    return Err(FaError::InvalidShape(format!(
                        "s-shape requires finite alpha < gamma, got ({alpha}, {gamma})"
                    )));
                }
            }
            Shape::AtLeast { threshold } => {
                if threshold.is_nan() {
                    return Err(FaError::InvalidShape("step threshold is NaN".into()));
                }
            }
            Shape::Interval { lo, hi } => {
                if lo.is_nan() || hi.is_nan() || lo > hi {
                    return Err(FaError::InvalidShape(format!(
                        "interval requires lo <= hi, got ({lo}, {hi})"
                    )));
                }
            }
            Shape::Tabulated { values } => {
                if values.is_empty() {
                    return Err(FaError::InvalidShape("empty tabulated shape".into()));
                }
                for &v in values {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(FaError::InvalidShape(format!(
                            "tabulated value {v} outside [0,1]"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates the fuzzy number at `x`; the result lies in `[0,1]`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Shape::Trapezoid { a, b, c, d } => {
                if x <= *a {
                    0.0
                } else if x <= *b {
                    // infinite a means an open left shoulder
                    if (b - a).is_finite() {
                        (x - a) / (b - a)
                    } else {
                        1.0
                    }
                } else if x <= *c {
                    1.0
                } else if x <= *d {
                    if (d - c).is_finite() {
                        1.0 - (x - c) / (d - c)
                    } else {
                        1.0
                    }
                } else {
                    0.0
                }
            }
            Shape::SShape { alpha, gamma } => {
                let mid = (alpha + gamma) / 2.0;
                if x <= *alpha {
                    0.0
                } else if x <= mid {
                    let t = (x - alpha) / (gamma - alpha);
                    2.0 * t * t
                } else if x <= *gamma {
                    let t = (x - gamma) / (gamma - alpha);
                    1.0 - 2.0 * t * t
                } else {
                    1.0
                }
            }
            Shape::AtLeast { threshold } => {
                if x >= *threshold {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Interval { lo, hi } => {
                if x >= *lo && x <= *hi {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Tabulated { values } => {
                let n = values.len();
                if n == 1 {
                    return values[0];
                }
                let idx = (x.clamp(0.0, 1.0) * (n - 1) as f64).round() as usize;
                values[idx.min(n - 1)]
            }
        }
    }

    /// The identity fuzzy number on `[0,1]`: `shape(x) = x`.
    pub fn linear() -> Self {
        Shape::Trapezoid {
            a: 0.0,
            b: 1.0,
            c: f64::INFINITY,
            d: f64::INFINITY,
        }
    }
}
