//! Property-based invariants for the set algebra, the cardinality dynamic
//! programs, and the sampling layer.

use proptest::collection::vec;
use proptest::prelude::*;

use fa_quant::exact::{cardinality_distribution, eval_exact, oracle_eval};
use fa_quant::mc::{mc_eval, McConfig};
use fa_quant::{catalog, CrispSet, FuzzySet, Shape};

fn degrees(m: usize) -> impl Strategy<Value = Vec<f64>> {
    vec(0.0..=1.0f64, 1..=m)
}

/// Lukasiewicz implication, used to cross-check the representative
/// probability through the equipotence formula.
fn luka(a: f64, b: f64) -> f64 {
    (1.0 - a + b).min(1.0)
}

proptest! {
    #[test]
    fn representative_probabilities_sum_to_one(mu in degrees(10)) {
        let x = FuzzySet::new(mu.clone()).unwrap();
        let m = mu.len();
        let mut total = 0.0;
        for mask in 0..1u32 << m {
            let y = CrispSet::from_mask(mask, m).unwrap();
            total += x.representative_probability(&y).unwrap();
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn representative_probability_equals_equipotence(mu in degrees(8), mask in any::<u32>()) {
        // m_X(Y) coincides with the degree to which Y and X are equal under
        // the product tnorm and the Lukasiewicz implication
        let x = FuzzySet::new(mu.clone()).unwrap();
        let m = mu.len();
        let y = CrispSet::from_mask(mask & ((1 << m) - 1), m).unwrap();
        let direct = x.representative_probability(&y).unwrap();
        let mut equipotence = 1.0;
        for (e, &mu_e) in mu.iter().enumerate() {
            let chi = f64::from(y.contains(e));
            equipotence *= luka(chi, mu_e) * luka(mu_e, chi);
        }
        prop_assert!((direct - equipotence).abs() < 1e-12);
    }

    #[test]
    fn cardinality_distribution_is_a_pmf(mu in degrees(60)) {
        let dist = cardinality_distribution(&FuzzySet::new(mu.clone()).unwrap());
        prop_assert_eq!(dist.probs().len(), mu.len() + 1);
        prop_assert!(dist.probs().iter().all(|&p| p >= 0.0));
        let total: f64 = dist.probs().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn de_morgan_for_probabilistic_connectives(a in degrees(12), b in degrees(12)) {
        let m = a.len().min(b.len());
        let x1 = FuzzySet::new(a[..m].to_vec()).unwrap();
        let x2 = FuzzySet::new(b[..m].to_vec()).unwrap();
        let lhs = x1.union(&x2).unwrap().complement();
        let rhs = x1.complement().intersect(&x2.complement()).unwrap();
        for (p, q) in lhs.memberships().iter().zip(rhs.memberships()) {
            prop_assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn shape_values_stay_in_unit_interval(
        params in vec(-2.0..3.0f64, 4),
        x in -3.0..4.0f64,
    ) {
        let mut p = params.clone();
        p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let shapes = [
            Shape::Trapezoid { a: p[0], b: p[1], c: p[2], d: p[3] },
            Shape::SShape { alpha: p[0], gamma: p[0] + 1.0 },
            Shape::AtLeast { threshold: p[1] },
            Shape::Interval { lo: p[1], hi: p[2] },
        ];
        for s in shapes {
            s.validate().unwrap();
            let v = s.eval(x);
            prop_assert!((0.0..=1.0).contains(&v), "{s:?} at {x} -> {v}");
        }
    }

    #[test]
    fn trapezoid_is_monotone_on_its_flanks(
        params in vec(-1.0..2.0f64, 4),
        xs in vec(-1.0..2.0f64, 2),
    ) {
        let mut p = params.clone();
        p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s = Shape::Trapezoid { a: p[0], b: p[1], c: p[2], d: p[3] };
        let (lo, hi) = if xs[0] <= xs[1] { (xs[0], xs[1]) } else { (xs[1], xs[0]) };
        if hi <= p[1] {
            prop_assert!(s.eval(lo) <= s.eval(hi) + 1e-12);
        }
        if lo >= p[2] {
            prop_assert!(s.eval(lo) + 1e-12 >= s.eval(hi));
        }
    }

    #[test]
    fn unary_dp_matches_oracle_on_random_instances(mu in degrees(12)) {
        let x = FuzzySet::new(mu).unwrap();
        let q = catalog::identity();
        let dp = eval_exact(&q, std::slice::from_ref(&x)).unwrap();
        let oracle = oracle_eval(&q, std::slice::from_ref(&x)).unwrap();
        prop_assert!((dp - oracle).abs() < 1e-12);
    }

    #[test]
    fn binary_dp_matches_oracle_on_random_instances(a in degrees(6), b in degrees(6)) {
        let m = a.len().min(b.len());
        let x1 = FuzzySet::new(a[..m].to_vec()).unwrap();
        let x2 = FuzzySet::new(b[..m].to_vec()).unwrap();
        let q = catalog::nearly_all();
        let dp = eval_exact(&q, &[x1.clone(), x2.clone()]).unwrap();
        let oracle = oracle_eval(&q, &[x1, x2]).unwrap();
        prop_assert!((dp - oracle).abs() < 1e-12);
    }

    #[test]
    fn mc_is_deterministic_and_bounded(mu in degrees(8), seed in any::<u64>()) {
        let x = FuzzySet::new(mu).unwrap();
        let q = catalog::identity();
        let cfg = McConfig::new(500, seed).with_partitions(2);
        let a = mc_eval(&q, std::slice::from_ref(&x), &cfg).unwrap();
        let b = mc_eval(&q, std::slice::from_ref(&x), &cfg).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!((0.0..=1.0).contains(&a.value));
        prop_assert!(a.stderr >= 0.0);
    }
}
