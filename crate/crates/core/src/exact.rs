//! Exact evaluation of fuzzified quantifiers.
//!
//! Three routes compute the same expectation:
//!
//! * [`oracle_eval`] enumerates all `2^(n*m)` crisp subset tuples (reference
//!   implementation, hard budget);
//! * [`eval_unary`] and [`eval_binary_conservative`] are polynomial dynamic
//!   programs over set cardinalities, `O(m^2)` and `O(m^3)`;
//! * [`eval_general`] handles any quantitative quantifier through a dense
//!   joint cardinality tensor, `O(m * 2^n * (m+1)^K)`.

use crate::error::FaError;
use crate::quantifier::SemiFuzzyQuantifier;
use crate::sets::{BooleanCombination, FuzzySet};
use crate::{DEFAULT_TENSOR_MEM_CAP, ORACLE_BUDGET_BITS};

/// The probability function of the cardinality of a random representative:
/// `probs[j] = Pr(|Y| = j)`, the Poisson-binomial pmf with the membership
/// degrees as success probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityDistribution {
    probs: Vec<f64>,
}

impl CardinalityDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Referential size; the vector has `m + 1` entries.
    pub fn m(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn prob(&self, j: usize) -> f64 {
        self.probs[j]
    }
}

/// The joint probability function of `K` combination cardinalities, dense
/// over `{0..m}^K`, row-major with axis 0 fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityTensor {
    dims: usize,
    extent: usize,
    probs: Vec<f64>,
}

impl CardinalityTensor {
    fn zeros(dims: usize, extent: usize, mem_cap: usize) -> Result<Self, FaError> {
        let len = extent
            .checked_pow(dims as u32)
            .filter(|l| l.checked_mul(8).is_some_and(|bytes| bytes <= mem_cap));
        match len {
            Some(len) => Ok(Self {
                dims,
                extent,
                probs: vec![0.0; len],
            }),
            None => Err(FaError::TensorMemoryExceeded {
                required: extent
                    .checked_pow(dims as u32)
                    .and_then(|l| l.checked_mul(8))
                    .unwrap_or(usize::MAX),
                cap: mem_cap,
            }),
        }
    }

    /// Builds a tensor from raw nonnegative weights, normalizing to mass 1.
    pub(crate) fn from_weights(
        dims: usize,
        extent: usize,
        weights: Vec<f64>,
    ) -> Result<Self, FaError> {
        if weights.len() != extent.pow(dims as u32) {
            return Err(FaError::ArityMismatch {
                expected: extent.pow(dims as u32),
                got: weights.len(),
            });
        }
        let total: f64 = weights.iter().sum();
        let probs = if total > 0.0 {
            weights.into_iter().map(|w| w / total).collect()
        } else {
            weights
        };
        Ok(Self {
            dims,
            extent,
            probs,
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Axis extent, `m + 1` for every axis.
    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, cards: &[usize]) -> Result<f64, FaError> {
        Ok(self.probs[self.flat_index(cards)?])
    }

    fn flat_index(&self, cards: &[usize]) -> Result<usize, FaError> {
        if cards.len() != self.dims {
            return Err(FaError::ArityMismatch {
                expected: self.dims,
                got: cards.len(),
            });
        }
        let mut idx = 0;
        let mut stride = 1;
        for &c in cards {
            if c >= self.extent {
                return Err(FaError::CardinalityOutOfRange {
                    index: c,
                    m: self.extent - 1,
                });
            }
            idx += c * stride;
            stride *= self.extent;
        }
        Ok(idx)
    }

    /// Marginal pmf along one axis; a Poisson-binomial distribution of the
    /// corresponding combined set.
    pub fn marginal(&self, axis: usize) -> Result<CardinalityDistribution, FaError> {
        if axis >= self.dims {
            return Err(FaError::ArityMismatch {
                expected: self.dims,
                got: axis + 1,
            });
        }
        let stride = self.extent.pow(axis as u32);
        let mut probs = vec![0.0; self.extent];
        for (flat, &p) in self.probs.iter().enumerate() {
            probs[flat / stride % self.extent] += p;
        }
        Ok(CardinalityDistribution { probs })
    }

    /// Iterates `(cards, prob)` over nonzero entries.
    fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let (dims, extent) = (self.dims, self.extent);
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(move |(flat, &p)| {
                let mut cards = vec![0; dims];
                let mut rest = flat;
                for c in cards.iter_mut() {
                    *c = rest % extent;
                    rest /= extent;
                }
                (cards, p)
            })
    }
}

fn common_length(sets: &[FuzzySet], arity: usize) -> Result<usize, FaError> {
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

/// Brute-force reference evaluation: the expectation of `Q` over independent
/// random crisp representatives, as an explicit sum over all subset tuples.
/// Costs `2^(n*m)`; refuses beyond [`ORACLE_BUDGET_BITS`].
pub fn oracle_eval(q: &SemiFuzzyQuantifier, sets: &[FuzzySet]) -> Result<f64, FaError> {
    let n = q.arity();
    let m = common_length(sets, n)?;
    let bits = (n * m) as u32;
    if bits > ORACLE_BUDGET_BITS {
        return Err(FaError::OracleBudgetExceeded {
            bits,
            limit: ORACLE_BUDGET_BITS,
        });
    }

    // representative probability of every subset mask, per argument set
    let mask_probs: Vec<Vec<f64>> = sets
        .iter()
        .map(|x| {
            (0..1u32 << m)
                .map(|mask| {
                    let mut p = 1.0;
                    for (e, &mu) in x.memberships().iter().enumerate() {
                        p *= if mask >> e & 1 == 1 { mu } else { 1.0 - mu };
                    }
                    p
                })
                .collect()
        })
        .collect();

    let mut masks = vec![0u32; n];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        for (i, &mask) in masks.iter().enumerate() {
            weight *= mask_probs[i][mask as usize];
        }
        if weight != 0.0 {
            let cards: Vec<usize> = q
                .combinations()
                .iter()
                .map(|c| combination_cardinality_masks(c, &masks, m))
                .collect();
            total += weight * q.apply_q(&cards, m)?;
        }
        // odometer over the n subset masks
        let mut i = 0;
        loop {
            if i == n {
                return Ok(total);
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

/// Cardinality of a boolean combination of subsets given as bit masks.
fn combination_cardinality_masks(c: &BooleanCombination, masks: &[u32], m: usize) -> usize {
    let mut included = 0u32;
    let full = (1u32 << m) - 1;
    for atom in 0..1usize << masks.len() {
        if !c.contains_atom(atom) {
            continue;
        }
        let mut region = full;
        for (i, &mask) in masks.iter().enumerate() {
            region &= if atom >> i & 1 == 1 {
                mask
            } else {
                !mask & full
            };
        }
        included |= region;
    }
    included.count_ones() as usize
}

/// The cardinality pmf of a random representative of `x`, by the incremental
/// per-element recurrence: after `e` elements the vector has `e + 1` entries
/// and folding in degree `mu` mixes `(1-mu)*Pr(j) + mu*Pr(j-1)`. `O(m^2)`.
pub fn cardinality_distribution(x: &FuzzySet) -> CardinalityDistribution {
    let mut probs = vec![1.0];
    for &mu in x.memberships() {
        let mut next = vec![0.0; probs.len() + 1];
        next[0] = (1.0 - mu) * probs[0];
        for j in 1..probs.len() {
            next[j] = (1.0 - mu) * probs[j] + mu * probs[j - 1];
        }
        next[probs.len()] = mu * probs[probs.len() - 1];
        probs = next;
    }
    CardinalityDistribution { probs }
}

/// Unary evaluation through the cardinality pmf:
/// `Σ_j Pr(card = j) * q(j)`. `O(m^2)`.
pub fn eval_unary(q: &SemiFuzzyQuantifier, x: &FuzzySet) -> Result<f64, FaError> {
    if q.arity() != 1 || q.num_combinations() != 1 {
        return Err(FaError::ArityMismatch {
            expected: 1,
            got: q.arity(),
        });
    }
    let combined = q.combinations()[0].combine(std::slice::from_ref(x))?;
    let dist = cardinality_distribution(&combined);
    let m = x.len();
    let mut total = 0.0;
    for (j, &p) in dist.probs().iter().enumerate() {
        if p != 0.0 {
            total += p * q.apply_q(&[j], m)?;
        }
    }
    Ok(total)
}

/// Joint pmf of `(|Y1|, |Y1 ∩ Y2|)` for independent representatives of two
/// fuzzy sets. Per element the mass at `(j, k)` splits with weights
/// `(1-mu1)` staying, `mu1*(1-mu2)` to `(j+1, k)` and `mu1*mu2` to
/// `(j+1, k+1)`; entries with `k > j` stay zero. `O(m^3)`.
pub fn joint_cardinality(x1: &FuzzySet, x2: &FuzzySet) -> Result<CardinalityTensor, FaError> {
    if x1.len() != x2.len() {
        return Err(FaError::LengthMismatch(x1.len(), x2.len()));
    }
    let m = x1.len();
    let ext = m + 1;
    let mut cur = CardinalityTensor::zeros(2, ext, usize::MAX)?;
    cur.probs[0] = 1.0;
    // scratch tensor per element avoids read-after-write corruption
    for (e, (&mu1, &mu2)) in x1.memberships().iter().zip(x2.memberships()).enumerate() {
        let mut next = vec![0.0; cur.probs.len()];
        for j in 0..=e {
            for k in 0..=j {
                let w = cur.probs[j + k * ext];
                if w == 0.0 {
                    continue;
                }
                next[j + k * ext] += (1.0 - mu1) * w;
                next[j + 1 + k * ext] += mu1 * (1.0 - mu2) * w;
                next[j + 1 + (k + 1) * ext] += mu1 * mu2 * w;
            }
        }
        cur.probs = next;
    }
    Ok(cur)
}

/// Specialized evaluator for binary quantifiers readable as
/// `q(|Y1|, |Y1 ∩ Y2|)`: `Σ_{j, k<=j} f(j, k) * q(j, k)`. `O(m^3)`.
pub fn eval_binary_conservative(
    q: &SemiFuzzyQuantifier,
    x1: &FuzzySet,
    x2: &FuzzySet,
) -> Result<f64, FaError> {
    if !q.is_conservative_binary() {
        return Err(FaError::NotConservative);
    }
    let tensor = joint_cardinality(x1, x2)?;
    let ext = tensor.extent;
    let mut total = 0.0;
    for j in 0..ext {
        for k in 0..=j {
            let p = tensor.probs[j + k * ext];
            if p != 0.0 {
                total += p * q.conservative_q(j, k)?;
            }
        }
    }
    Ok(total)
}

/// Joint pmf of `K` boolean-combination cardinalities for `n` independent
/// fuzzy arguments. Per element the `2^n` membership atoms carry
/// probabilities `p_a = Π_i (a_i ? mu_i : 1-mu_i)` and atom `a` shifts mass
/// by one along every axis whose combination contains `a`.
/// `O(m * 2^n * (m+1)^K)` time, `(m+1)^K` doubles of memory (capped).
pub fn joint_combination_tensor(
    combinations: &[BooleanCombination],
    sets: &[FuzzySet],
    mem_cap: usize,
) -> Result<CardinalityTensor, FaError> {
    let n = sets.len();
    let m = common_length(sets, n)?;
    let k_dims = combinations.len();
    if k_dims == 0 {
        return Err(FaError::ArityMismatch {
            expected: 1,
            got: 0,
        });
    }
    for c in combinations {
        if c.arity() != n {
            return Err(FaError::ArityMismatch {
                expected: n,
                got: c.arity(),
            });
        }
    }
    let ext = m + 1;
    let mut cur = CardinalityTensor::zeros(k_dims, ext, mem_cap)?;
    cur.probs[0] = 1.0;

    // flat-index shift contributed by each membership atom
    let atom_offsets: Vec<usize> = (0..1usize << n)
        .map(|atom| {
            let mut offset = 0;
            let mut stride = 1;
            for c in combinations {
                if c.contains_atom(atom) {
                    offset += stride;
                }
                stride *= ext;
            }
            offset
        })
        .collect();

    let mut atom_probs = vec![0.0; 1 << n];
    for e in 0..m {
        for (atom, slot) in atom_probs.iter_mut().enumerate() {
            let mut p = 1.0;
            for (i, x) in sets.iter().enumerate() {
                let mu = x.degree(e);
                p *= if atom >> i & 1 == 1 { mu } else { 1.0 - mu };
            }
            *slot = p;
        }
        let mut next = vec![0.0; cur.probs.len()];
        for (flat, &w) in cur.probs.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (atom, &p) in atom_probs.iter().enumerate() {
                if p != 0.0 {
                    // axis values never exceed the number of elements seen,
                    // so the shifted index stays inside the tensor
                    next[flat + atom_offsets[atom]] += w * p;
                }
            }
        }
        cur.probs = next;
    }
    Ok(cur)
}

/// Generic exact evaluation: `Σ q(i_1..i_K) * f(i_1..i_K)` over the joint
/// cardinality tensor.
pub fn eval_general(
    q: &SemiFuzzyQuantifier,
    sets: &[FuzzySet],
    mem_cap: usize,
) -> Result<f64, FaError> {
    let m = common_length(sets, q.arity())?;
    let tensor = joint_combination_tensor(q.combinations(), sets, mem_cap)?;
    let mut total = 0.0;
    for (cards, p) in tensor.nonzero() {
        total += p * q.apply_q(&cards, m)?;
    }
    Ok(total)
}

/// Exact evaluation through the cheapest applicable route: the unary pmf for
/// arity-1 identity quantifiers, the conservative kernel for binary
/// proportional quantifiers, and the general tensor otherwise.
pub fn eval_exact(q: &SemiFuzzyQuantifier, sets: &[FuzzySet]) -> Result<f64, FaError> {
    eval_exact_with_cap(q, sets, DEFAULT_TENSOR_MEM_CAP)
}

/// [`eval_exact`] with an explicit tensor memory cap in bytes.
pub fn eval_exact_with_cap(
    q: &SemiFuzzyQuantifier,
    sets: &[FuzzySet],
    mem_cap: usize,
) -> Result<f64, FaError> {
    common_length(sets, q.arity())?;
    if q.arity() == 1 && q.num_combinations() == 1 {
        eval_unary(q, &sets[0])
    } else if q.is_conservative_binary() {
        eval_binary_conservative(q, &sets[0], &sets[1])
    } else {
        eval_general(q, sets, mem_cap)
    }
}
