//! Seeded Monte Carlo approximation of the fuzzified quantifier.
//!
//! Each simulation samples every element of every argument set as an
//! independent Bernoulli trial with the membership degree as success
//! probability, then evaluates the semi-fuzzy quantifier on the sampled
//! crisp sets. The estimate is the sample mean; the standard error of the
//! mean is reported alongside.
//!
//! Reproducibility contract: the result is a pure function of
//! `(inputs, num_simulations, seed, partitions)`. Each partition owns a
//! dedicated RNG stream derived from `(seed, partition index)`, so running
//! partitions in parallel or serially gives bit-identical output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::FaError;
use crate::exact::CardinalityTensor;
use crate::quantifier::SemiFuzzyQuantifier;
use crate::sets::BooleanCombination;
use crate::sets::FuzzySet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub num_simulations: u64,
    pub seed: u64,
    /// Number of independent RNG streams the work is split across.
    pub partitions: u64,
}

impl McConfig {
    pub fn new(num_simulations: u64, seed: u64) -> Self {
        Self {
            num_simulations,
            seed,
            partitions: 1,
        }
    }

    pub fn with_partitions(mut self, partitions: u64) -> Self {
        self.partitions = partitions;
        self
    }

    fn validate(&self) -> Result<(), FaError> {
        if self.num_simulations == 0 || self.partitions == 0 {
            return Err(FaError::InvalidShape(
                "Monte Carlo needs at least one simulation and one partition".into(),
            ));
        }
        Ok(())
    }

    /// Simulation count of each partition; the remainder goes to the
    /// earliest partitions so counts differ by at most one.
    fn partition_sizes(&self) -> Vec<u64> {
        let p = self.partitions.min(self.num_simulations);
        let base = self.num_simulations / p;
        let rem = self.num_simulations % p;
        (0..p).map(|i| base + u64::from(i < rem)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    /// Sample standard deviation of per-simulation values over
    /// `sqrt(num_simulations)`.
    pub stderr: f64,
    pub num_simulations: u64,
    pub seed: u64,
}

fn partition_rng(seed: u64, partition: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(partition);
    rng
}

fn check_inputs(arity: usize, sets: &[FuzzySet]) -> Result<usize, FaError> {
    if sets.len() != arity {
        return Err(FaError::ArityMismatch {
            expected: arity,
            got: sets.len(),
        });
    }
    let m = sets[0].len();
    for s in sets {
        if s.len() != m {
            return Err(FaError::LengthMismatch(m, s.len()));
        }
    }
    Ok(m)
}

/// One simulation: samples crisp representatives and returns the
/// cardinality of every combination. Draw order is fixed (elements outer,
/// argument sets inner) and part of the reproducibility contract.
fn sample_cardinalities(
    combinations: &[BooleanCombination],
    sets: &[FuzzySet],
    m: usize,
    rng: &mut ChaCha12Rng,
    cards: &mut [usize],
) {
    cards.fill(0);
    for e in 0..m {
        let mut atom = 0usize;
        for (i, x) in sets.iter().enumerate() {
            let hit = rng.gen::<f64>() < x.degree(e);
            atom |= usize::from(hit) << i;
        }
        for (c, slot) in combinations.iter().zip(cards.iter_mut()) {
            if c.contains_atom(atom) {
                *slot += 1;
            }
        }
    }
}

/// Monte Carlo estimate of the fuzzified quantifier value.
pub fn mc_eval(
    q: &SemiFuzzyQuantifier,
    sets: &[FuzzySet],
    cfg: &McConfig,
) -> Result<McEstimate, FaError> {
    cfg.validate()?;
    let m = check_inputs(q.arity(), sets)?;
    let sizes = cfg.partition_sizes();

    let partials: Vec<Result<(f64, f64), FaError>> = sizes
        .par_iter()
        .enumerate()
        .map(|(p, &count)| {
            let mut rng = partition_rng(cfg.seed, p as u64);
            let mut cards = vec![0usize; q.num_combinations()];
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                sample_cardinalities(q.combinations(), sets, m, &mut rng, &mut cards);
                let v = q.apply_q(&cards, m)?;
                sum += v;
                sum_sq += v * v;
            }
            Ok((sum, sum_sq))
        })
        .collect();

    // merge in partition order; addition order is fixed for bit-identical
    // results regardless of thread scheduling
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for partial in partials {
        let (s, s2) = partial?;
        sum += s;
        sum_sq += s2;
    }

    let n = cfg.num_simulations as f64;
    let mean = sum / n;
    let stderr = if cfg.num_simulations > 1 {
        let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        value: mean,
        stderr,
        num_simulations: cfg.num_simulations,
        seed: cfg.seed,
    })
}

/// Empirical joint distribution of the combination cardinalities, as a
/// normalized tensor of simulation counts.
pub fn mc_histogram(
    combinations: &[BooleanCombination],
    sets: &[FuzzySet],
    cfg: &McConfig,
) -> Result<CardinalityTensor, FaError> {
    cfg.validate()?;
    if combinations.is_empty() {
        return Err(FaError::ArityMismatch {
            expected: 1,
            got: 0,
        });
    }
    let n = combinations[0].arity();
    let m = check_inputs(n, sets)?;
    for c in combinations {
        if c.arity() != n {
            return Err(FaError::ArityMismatch {
                expected: n,
                got: c.arity(),
            });
        }
    }
    let extent = m + 1;
    let len = extent.pow(combinations.len() as u32);
    let sizes = cfg.partition_sizes();

    let counts = sizes
        .par_iter()
        .enumerate()
        .map(|(p, &count)| {
            let mut rng = partition_rng(cfg.seed, p as u64);
            let mut cards = vec![0usize; combinations.len()];
            let mut bins = vec![0.0f64; len];
            for _ in 0..count {
                sample_cardinalities(combinations, sets, m, &mut rng, &mut cards);
                let mut flat = 0;
                let mut stride = 1;
                for &c in &cards {
                    flat += c * stride;
                    stride *= extent;
                }
                bins[flat] += 1.0;
            }
            bins
        })
        .reduce(
            || vec![0.0; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    CardinalityTensor::from_weights(combinations.len(), extent, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::{cardinality_distribution, eval_exact};
    use crate::shape::Shape;

    fn fs(v: &[f64]) -> FuzzySet {
        FuzzySet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn crisp_inputs_are_exact_with_zero_stderr() {
        let q = catalog::all();
        let sets = [fs(&[1.0, 1.0, 0.0]), fs(&[1.0, 1.0, 1.0])];
        let est = mc_eval(&q, &sets, &McConfig::new(1000, 7)).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn deterministic_for_fixed_seed_and_partitions() {
        let q = catalog::nearly_all();
        let sets = [fs(&[0.8, 0.9, 1.0, 0.2]), fs(&[1.0, 0.8, 0.3, 0.1])];
        let cfg = McConfig::new(20_000, 42).with_partitions(4);
        let a = mc_eval(&q, &sets, &cfg).unwrap();
        let b = mc_eval(&q, &sets, &cfg).unwrap();
        assert_eq!(a, b);

        // different partition counts give different but compatible estimates
        let c = mc_eval(&q, &sets, &McConfig::new(20_000, 42)).unwrap();
        assert_ne!(a.value, c.value);
        let gap = (a.value - c.value).abs();
        assert!(gap <= 4.0 * (a.stderr + c.stderr), "gap {gap}");
    }

    #[test]
    fn estimate_brackets_exact_value() {
        let q = catalog::nearly_all();
        let sets = [fs(&[0.8, 0.9, 1.0, 0.2]), fs(&[1.0, 0.8, 0.3, 0.1])];
        let exact = eval_exact(&q, &sets).unwrap();
        let est = mc_eval(&q, &sets, &McConfig::new(200_000, 3)).unwrap();
        assert!(est.stderr > 0.0);
        assert!(
            (est.value - exact).abs() <= 4.0 * est.stderr,
            "mc {} exact {exact} stderr {}",
            est.value,
            est.stderr
        );
    }

    #[test]
    fn proportional_unary_example_scale() {
        let q = catalog::unary_prop(Shape::Trapezoid {
            a: 0.5,
            b: 0.6,
            c: f64::INFINITY,
            d: f64::INFINITY,
        })
        .unwrap();
        let x = FuzzySet::constant(0.5, 50).unwrap();
        let exact = eval_exact(&q, std::slice::from_ref(&x)).unwrap();
        let est = mc_eval(&q, std::slice::from_ref(&x), &McConfig::new(100_000, 11)).unwrap();
        assert!((est.value - exact).abs() <= 4.0 * est.stderr);
        // stderr magnitude ~ 1e-3 at this sample size
        assert!(est.stderr > 1e-4 && est.stderr < 1e-2);
    }

    #[test]
    fn histogram_matches_exact_pmf() {
        let x = fs(&[0.5, 0.5]);
        let combos = [crate::sets::BooleanCombination::identity_unary()];
        let t = mc_histogram(
            &combos,
            std::slice::from_ref(&x),
            &McConfig::new(100_000, 5),
        )
        .unwrap();
        let exact = cardinality_distribution(&x);
        let tv: f64 = (0..=2)
            .map(|j| (t.get(&[j]).unwrap() - exact.prob(j)).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.01, "total variation {tv}");
        assert!((t.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_concentrates_near_half_for_m50() {
        let x = FuzzySet::constant(0.5, 50).unwrap();
        let combos = [crate::sets::BooleanCombination::identity_unary()];
        let t = mc_histogram(&combos, std::slice::from_ref(&x), &McConfig::new(50_000, 9)).unwrap();
        let inside: f64 = (0..=50)
            .filter(|&j| {
                let p = j as f64 / 50.0;
                (0.36..=0.64).contains(&p)
            })
            .map(|j| t.get(&[j]).unwrap())
            .sum();
        assert!(inside >= 0.95, "mass inside [0.36, 0.64] = {inside}");
    }

    #[test]
    fn invalid_config_is_rejected() {
        let q = catalog::identity();
        let x = [fs(&[0.5])];
        assert!(mc_eval(&q, &x, &McConfig::new(0, 1)).is_err());
        let bad = McConfig {
            num_simulations: 10,
            seed: 0,
            partitions: 0,
        };
        assert!(mc_eval(&q, &x, &bad).is_err());
    }
}
