//! Executable adequacy checks for the fuzzification mechanism.
//!
//! Each check exercises an algebraic identity the evaluator must satisfy
//! (crisp agreement, negation laws, averaging, partition sums, strict
//! monotonicity, marginalization, transposition) on seeded random inputs
//! plus adversarial corners, and reports the largest observed deviation
//! against a per-property tolerance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::catalog;
use crate::error::FaError;
use crate::exact::{cardinality_distribution, eval_exact, eval_unary, joint_combination_tensor};
use crate::quantifier::SemiFuzzyQuantifier;
use crate::sets::{BooleanCombination, CrispSet, FuzzySet};
use crate::shape::Shape;

/// Outcome of one property check. `pass` holds exactly when the maximum
/// deviation is within tolerance, so regressions surface as numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub id: String,
    pub instances: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PropertyReport {
    fn new(id: &str, instances: usize, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            instances,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_set(rng: &mut ChaCha12Rng, m: usize) -> FuzzySet {
    FuzzySet::new((0..m).map(|_| rng.gen::<f64>()).collect()).expect("m >= 1")
}

/// Random sets plus the adversarial corners all-0, all-1, all-0.5 and a
/// single random crisp set.
fn sample_inputs(rng: &mut ChaCha12Rng, m: usize, n: usize, samples: usize) -> Vec<Vec<FuzzySet>> {
    let mut out = Vec::with_capacity(samples + 4);
    for v in [0.0, 1.0, 0.5] {
        out.push(vec![FuzzySet::constant(v, m).unwrap(); n]);
    }
    out.push(
        (0..n)
            .map(|_| FuzzySet::new((0..m).map(|_| f64::from(rng.gen::<bool>())).collect()).unwrap())
            .collect(),
    );
    for _ in 0..samples {
        out.push((0..n).map(|_| random_set(rng, m)).collect());
    }
    out
}

/// On crisp arguments the fuzzified quantifier must reproduce the
/// semi-fuzzy one exactly; checked over all crisp tuples of size `m`.
pub fn check_correct_generalization(
    q: &SemiFuzzyQuantifier,
    m: usize,
) -> Result<PropertyReport, FaError> {
    let n = q.arity();
    let bits = (n * m) as u32;
    if bits > 16 {
        return Err(FaError::OracleBudgetExceeded { bits, limit: 16 });
    }
    let mut max_dev: f64 = 0.0;
    let mut instances = 0;
    let mut masks = vec![0u32; n];
    loop {
        let crisp: Vec<CrispSet> = masks
            .iter()
            .map(|&mask| CrispSet::from_mask(mask, m).unwrap())
            .collect();
        let fuzzy: Vec<FuzzySet> = crisp.iter().map(FuzzySet::from).collect();
        let expected = q.apply_to_crisp(&crisp)?;
        let got = eval_exact(q, &fuzzy)?;
        max_dev = max_dev.max((got - expected).abs());
        instances += 1;

        let mut i = 0;
        loop {
            if i == n {
                return Ok(PropertyReport::new(
                    "correct_generalization",
                    instances,
                    max_dev,
                    1e-12,
                ));
            }
            masks[i] += 1;
            if masks[i] < 1 << m {
                break;
            }
            masks[i] = 0;
            i += 1;
        }
    }
}

/// External negation flips the value, internal negation complements the
/// last argument, and the dual combines both; all three identities are
/// checked on random fuzzy inputs.
pub fn check_negations_and_dual(
    q: &SemiFuzzyQuantifier,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport, FaError> {
    let n = q.arity();
    let m = 6;
    let mut rng = rng_for(seed, 1);
    let mut max_dev: f64 = 0.0;
    let inputs = sample_inputs(&mut rng, m, n, samples);
    for sets in &inputs {
        let v = eval_exact(q, sets)?;

        let ext = eval_exact(&q.negate_external(), sets)?;
        max_dev = max_dev.max((ext - (1.0 - v)).abs());

        let mut flipped = sets.clone();
        let last = flipped[n - 1].complement();
        flipped[n - 1] = last;
        let int = eval_exact(&q.negate_internal(), sets)?;
        let int_ref = eval_exact(q, &flipped)?;
        max_dev = max_dev.max((int - int_ref).abs());

        let dual = eval_exact(&q.dual(), sets)?;
        max_dev = max_dev.max((dual - (1.0 - int_ref)).abs());

        let double = eval_exact(&q.negate_external().negate_external(), sets)?;
        max_dev = max_dev.max((double - v).abs());
    }
    Ok(PropertyReport::new(
        "negations_and_dual",
        inputs.len(),
        max_dev,
        1e-12,
    ))
}

/// The identity quantifier averages: its fuzzified value is the mean
/// membership, checked up to m = 2000.
pub fn check_averaging_identity(samples: usize, seed: u64) -> Result<PropertyReport, FaError> {
    let q = catalog::identity();
    let mut rng = rng_for(seed, 2);
    let mut max_dev: f64 = 0.0;
    let mut instances = 0;
    for &m in &[3usize, 10, 100, 500, 2000] {
        for _ in 0..samples.div_ceil(5).max(1) {
            let x = random_set(&mut rng, m);
            let got = eval_unary(&q, &x)?;
            max_dev = max_dev.max((got - x.mean()).abs());
            instances += 1;
        }
    }
    // the fixed three-element instance with mean exactly 0.5
    let x = FuzzySet::new(vec![0.2, 0.4, 0.9]).unwrap();
    max_dev = max_dev.max((eval_unary(&q, &x)? - 0.5).abs());
    Ok(PropertyReport::new(
        "averaging_identity",
        instances + 1,
        max_dev,
        1e-12,
    ))
}

/// Quantifiers built from a partition of unity sum to 1 on every input.
pub fn check_ruspini(
    partition: &[Shape],
    samples: usize,
    seed: u64,
) -> Result<PropertyReport, FaError> {
    let quantifiers = crate::quantifier::ruspini_partition(partition)?;
    let mut rng = rng_for(seed, 3);
    let m = 50;
    let mut max_dev: f64 = 0.0;
    let inputs = sample_inputs(&mut rng, m, 1, samples);
    for sets in &inputs {
        let sum: f64 = quantifiers
            .iter()
            .map(|q| eval_unary(q, &sets[0]))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .sum();
        max_dev = max_dev.max((sum - 1.0).abs());
    }
    Ok(PropertyReport::new(
        "ruspini_partition",
        inputs.len(),
        max_dev,
        1e-9,
    ))
}

/// For a strictly increasing proportional shape, raising any membership
/// that is not already 1 must strictly increase the unary value. The
/// reported deviation is the worst shortfall below the required minimum
/// increase of 1e-15.
pub fn check_fine_distinction(
    shape: &Shape,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport, FaError> {
    let q = catalog::unary_prop(shape.clone())?;
    let mut rng = rng_for(seed, 4);
    let m = 10;
    let mut max_shortfall: f64 = 0.0;
    let mut instances = 0;
    while instances < samples {
        let x = random_set(&mut rng, m);
        let idx = rng.gen_range(0..m);
        if x.degree(idx) >= 1.0 {
            continue;
        }
        let mut bumped = x.memberships().to_vec();
        bumped[idx] = (bumped[idx] + 0.05).min(1.0);
        let before = eval_unary(&q, &x)?;
        let after = eval_unary(&q, &FuzzySet::new(bumped)?)?;
        let increase = after - before;
        max_shortfall = max_shortfall.max(1e-15 - increase);
        instances += 1;
    }
    Ok(PropertyReport::new(
        "fine_distinction",
        instances,
        max_shortfall.max(0.0),
        0.0,
    ))
}

/// Marginals of the joint cardinality tensor are the cardinality pmfs of
/// the combined sets.
pub fn check_projection_theorem(samples: usize, seed: u64) -> Result<PropertyReport, FaError> {
    let combos = [
        BooleanCombination::atom_bits(&[true, true]),
        BooleanCombination::atom_bits(&[true, false]),
    ];
    let mut rng = rng_for(seed, 5);
    let m = 8;
    let mut max_dev: f64 = 0.0;
    let inputs = sample_inputs(&mut rng, m, 2, samples);
    for sets in &inputs {
        let tensor = joint_combination_tensor(&combos, sets, usize::MAX)?;
        for (axis, combo) in combos.iter().enumerate() {
            let marginal = tensor.marginal(axis)?;
            let direct = cardinality_distribution(&combo.combine(sets)?);
            for j in 0..=m {
                max_dev = max_dev.max((marginal.prob(j) - direct.prob(j)).abs());
            }
        }
    }
    Ok(PropertyReport::new(
        "projection_theorem",
        inputs.len(),
        max_dev,
        1e-12,
    ))
}

/// Exchanging quantifier arguments and input sets together leaves the
/// value unchanged.
pub fn check_transposition(
    q: &SemiFuzzyQuantifier,
    samples: usize,
    seed: u64,
) -> Result<PropertyReport, FaError> {
    let n = q.arity();
    if n < 2 {
        return Err(FaError::ArityMismatch {
            expected: 2,
            got: n,
        });
    }
    let transposed = q.transpose_args(0, 1)?;
    let mut rng = rng_for(seed, 6);
    let m = 6;
    let mut max_dev: f64 = 0.0;
    let inputs = sample_inputs(&mut rng, m, n, samples);
    for sets in &inputs {
        let mut swapped = sets.clone();
        swapped.swap(0, 1);
        let a = eval_exact(q, sets)?;
        let b = eval_exact(&transposed, &swapped)?;
        max_dev = max_dev.max((a - b).abs());
    }
    Ok(PropertyReport::new(
        "transposition",
        inputs.len(),
        max_dev,
        1e-12,
    ))
}

/// Runs every check with its standard parameters; the whole suite is a
/// deterministic function of the seed.
pub fn run_default_suite(seed: u64) -> Result<Vec<PropertyReport>, FaError> {
    let partition = [
        Shape::Trapezoid {
            a: f64::NEG_INFINITY,
            b: f64::NEG_INFINITY,
            c: 0.2,
            d: 0.4,
        },
        Shape::Trapezoid {
            a: 0.2,
            b: 0.4,
            c: 0.6,
            d: 0.8,
        },
        Shape::Trapezoid {
            a: 0.6,
            b: 0.8,
            c: f64::INFINITY,
            d: f64::INFINITY,
        },
    ];
    Ok(vec![
        check_correct_generalization(&catalog::some(), 4)?,
        check_correct_generalization(&catalog::nearly_all(), 4)?,
        check_correct_generalization(&catalog::exists(), 8)?,
        check_negations_and_dual(&catalog::nearly_all(), 100, seed)?,
        check_negations_and_dual(&catalog::all(), 100, seed)?,
        check_averaging_identity(100, seed)?,
        check_ruspini(&partition, 100, seed)?,
        check_fine_distinction(&Shape::linear(), 100, seed)?,
        check_projection_theorem(50, seed)?,
        check_transposition(&catalog::some(), 100, seed)?,
        check_transposition(&catalog::nearly_all(), 100, seed)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let reports = run_default_suite(20240817).unwrap();
        assert_eq!(reports.len(), 11);
        for r in &reports {
            assert!(r.pass, "{}: max_deviation {}", r.id, r.max_deviation);
            assert!(r.instances > 0);
        }
    }

    #[test]
    fn suite_is_deterministic_in_the_seed() {
        let a = run_default_suite(7).unwrap();
        let b = run_default_suite(7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pass_flag_tracks_tolerance() {
        // harness self-test: a deviation above tolerance must fail
        let bad = PropertyReport::new("corrupted", 1, 1e-6, 1e-12);
        assert!(!bad.pass);
        let good = PropertyReport::new("fine", 1, 1e-13, 1e-12);
        assert!(good.pass);
    }

    #[test]
    fn generalization_check_refuses_large_enumerations() {
        assert!(matches!(
            check_correct_generalization(&catalog::nearly_all(), 12),
            Err(FaError::OracleBudgetExceeded { .. })
        ));
    }

    #[test]
    fn ruspini_rejects_non_partition() {
        let shapes = [Shape::Trapezoid {
            a: 0.0,
            b: 0.5,
            c: f64::INFINITY,
            d: f64::INFINITY,
        }];
        assert!(check_ruspini(&shapes, 5, 1).is_err());
    }

    #[test]
    fn transposition_requires_binary() {
        assert!(check_transposition(&catalog::identity(), 5, 1).is_err());
    }
}
