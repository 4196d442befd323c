//! Fuzzy sets over a finite anonymous referential, crisp sets, and the
//! boolean combinations used to express quantitative quantifiers.
//!
//! The probabilistic reading is fixed throughout: a membership degree is the
//! probability that the element belongs to a random crisp representative of
//! the set, independently of every other element. The induced connectives
//! are therefore the strong negation, the product tnorm and the
//! probabilistic tconorm.

use crate::error::FaError;

/// A fuzzy subset of an implicit referential `E = {e_1 .. e_m}`, stored as a
/// vector of membership degrees in `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    memberships: Vec<f64>,
}

impl FuzzySet {
    /// Degrees outside `[0,1]` are rejected rather than clamped; an empty
    /// referential is rejected as well.
    pub fn new(memberships: Vec<f64>) -> Result<Self, FaError> {
        if memberships.is_empty() {
            return Err(FaError::EmptyReferential);
        }
        for &d in &memberships {
            if !(0.0..=1.0).contains(&d) {
                return Err(FaError::DegreeOutOfRange(d));
            }
        }
        Ok(Self { memberships })
    }

    /// Builds a set from computed probabilities, forgiving rounding overshoot
    /// of up to 1e-9 outside `[0,1]`.
    pub(crate) fn from_probabilities(values: Vec<f64>) -> Result<Self, FaError> {
        let clamped = values
            .into_iter()
            .map(|v| {
                if (-1e-9..0.0).contains(&v) {
                    0.0
                } else if v > 1.0 && v <= 1.0 + 1e-9 {
                    1.0
                } else {
                    v
                }
            })
            .collect();
        Self::new(clamped)
    }

    pub fn constant(value: f64, m: usize) -> Result<Self, FaError> {
        Self::new(vec![value; m])
    }

    pub fn len(&self) -> usize {
        self.memberships.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid FuzzySet always has m >= 1
    }

    pub fn memberships(&self) -> &[f64] {
        &self.memberships
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.memberships[i]
    }

    /// True when every degree is exactly 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.memberships.iter().all(|&d| d == 0.0 || d == 1.0)
    }

    pub fn mean(&self) -> f64 {
        self.memberships.iter().sum::<f64>() / self.len() as f64
    }

    /// Strong negation, pointwise `1 - mu`.
    pub fn complement(&self) -> Self {
        Self {
            memberships: self.memberships.iter().map(|d| 1.0 - d).collect(),
        }
    }

    /// Product tnorm, pointwise `mu1 * mu2`.
    pub fn intersect(&self, other: &Self) -> Result<Self, FaError> {
        self.check_len(other)?;
        Ok(Self {
            memberships: self
                .memberships
                .iter()
                .zip(&other.memberships)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Probabilistic tconorm, pointwise `mu1 + mu2 - mu1*mu2`.
    pub fn union(&self, other: &Self) -> Result<Self, FaError> {
        self.check_len(other)?;
        Ok(Self {
            memberships: self
                .memberships
                .iter()
                .zip(&other.memberships)
                .map(|(a, b)| a + b - a * b)
                .collect(),
        })
    }

    /// Probability that the crisp set `y` is a representative of this fuzzy
    /// set: the product of `mu` over members of `y` times `1 - mu` over
    /// non-members. Summed over all `2^m` subsets this is a probability
    /// measure on the power set of the referential.
    pub fn representative_probability(&self, y: &CrispSet) -> Result<f64, FaError> {
        if self.len() != y.len() {
            return Err(FaError::LengthMismatch(self.len(), y.len()));
        }
        let mut p = 1.0;
        for (mu, member) in self.memberships.iter().zip(y.members()) {
            p *= if *member { *mu } else { 1.0 - mu };
        }
        Ok(p)
    }

    fn check_len(&self, other: &Self) -> Result<(), FaError> {
        if self.len() != other.len() {
            return Err(FaError::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }
}

impl From<&CrispSet> for FuzzySet {
    fn from(y: &CrispSet) -> Self {
        FuzzySet {
            memberships: y
                .members()
                .iter()
                .map(|&b| if b { 1.0 } else { 0.0 })
                .collect(),
        }
    }
}

/// A crisp subset of the referential, as a boolean vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispSet {
    members: Vec<bool>,
}

impl CrispSet {
    pub fn new(members: Vec<bool>) -> Result<Self, FaError> {
        if members.is_empty() {
            return Err(FaError::EmptyReferential);
        }
        Ok(Self { members })
    }

    /// The subset of `{e_1..e_m}` encoded by the low `m` bits of `mask`.
    pub fn from_mask(mask: u32, m: usize) -> Result<Self, FaError> {
        Self::new((0..m).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn cardinality(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }
}

/// The membership pattern of an element with respect to the `n` argument
/// sets: literal `l_i = 1` means "belongs to the i-th argument".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSignature {
    bits: Vec<bool>,
}

impl AtomSignature {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn arity(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Index into a truth table: bit `i` of the result is literal `l_{i+1}`.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
    }
}

/// A boolean combination of `n` argument sets, represented extensionally as
/// a truth table over the `2^n` membership atoms. Entry `a` is true iff an
/// element whose membership pattern is `a` belongs to the combination.
///
/// Atom index convention: bit `i` of the index is the literal for argument
/// `i` (0-based), so for `n = 2` index 3 is `Y1 ∩ Y2` and index 1 is
/// `Y1 ∩ ¬Y2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanCombination {
    arity: usize,
    truth_table: Vec<bool>,
}

impl BooleanCombination {
    pub fn new(arity: usize, truth_table: Vec<bool>) -> Result<Self, FaError> {
        let expected = 1usize << arity;
        if truth_table.len() != expected {
            return Err(FaError::TruthTableLength {
                arity,
                expected,
                got: truth_table.len(),
            });
        }
        Ok(Self { arity, truth_table })
    }

    /// The pure atom `Y_1^(l_1) ∩ ... ∩ Y_n^(l_n)`: exactly one table entry
    /// is true.
    pub fn atom(signature: &AtomSignature) -> Self {
        let arity = signature.arity();
        let mut truth_table = vec![false; 1 << arity];
        truth_table[signature.index()] = true;
        Self { arity, truth_table }
    }

    /// Convenience for [`BooleanCombination::atom`] from literal bits.
    pub fn atom_bits(bits: &[bool]) -> Self {
        Self::atom(&AtomSignature::new(bits.to_vec()))
    }

    /// The identity combination for a unary quantifier: membership in `Y1`.
    pub fn identity_unary() -> Self {
        Self::atom_bits(&[true])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn truth_table(&self) -> &[bool] {
        &self.truth_table
    }

    pub fn contains_atom(&self, atom: usize) -> bool {
        self.truth_table[atom]
    }

    /// Rewrites the table as if the last argument were complemented: the new
    /// entry at atom `a` is the old entry at `a` with bit `n-1` flipped.
    /// Applying it twice restores the table bit-exactly.
    pub fn complement_last_argument(&self) -> Self {
        let mask = 1usize << (self.arity - 1);
        let truth_table = (0..self.truth_table.len())
            .map(|a| self.truth_table[a ^ mask])
            .collect();
        Self {
            arity: self.arity,
            truth_table,
        }
    }

    /// Rewrites the table with arguments `i` and `j` (0-based) exchanged.
    pub fn transpose_arguments(&self, i: usize, j: usize) -> Self {
        let truth_table = (0..self.truth_table.len())
            .map(|a| {
                let bi = a >> i & 1;
                let bj = a >> j & 1;
                let swapped = (a & !(1 << i) & !(1 << j)) | (bj << i) | (bi << j);
                self.truth_table[swapped]
            })
            .collect();
        Self {
            arity: self.arity,
            truth_table,
        }
    }

    /// Per-element probability of falling inside the combination: the sum
    /// over included atoms of the product of matching memberships. For crisp
    /// inputs this is the characteristic vector of the combination.
    pub fn combine(&self, sets: &[FuzzySet]) -> Result<FuzzySet, FaError> {
        if sets.len() != self.arity {
            return Err(FaError::ArityMismatch {
                expected: self.arity,
                got: sets.len(),
            });
        }
        let m = sets[0].len();
        for s in sets {
            if s.len() != m {
                return Err(FaError::LengthMismatch(m, s.len()));
            }
        }
        let mut out = vec![0.0; m];
        for (e, slot) in out.iter_mut().enumerate() {
            let mut total = 0.0;
            for (atom, &included) in self.truth_table.iter().enumerate() {
                if !included {
                    continue;
                }
                let mut p = 1.0;
                for (i, set) in sets.iter().enumerate() {
                    let mu = set.degree(e);
                    p *= if atom >> i & 1 == 1 { mu } else { 1.0 - mu };
                }
                total += p;
            }
            *slot = total;
        }
        FuzzySet::from_probabilities(out)
    }

    /// Evaluates the combination over crisp sets, returning its cardinality.
    pub fn crisp_cardinality(&self, sets: &[CrispSet]) -> Result<usize, FaError> {
        if sets.len() != self.arity {
            return Err(FaError::ArityMismatch {
                expected: self.arity,
                got: sets.len(),
            });
        }
        let m = sets[0].len();
        for s in sets {
            if s.len() != m {
                return Err(FaError::LengthMismatch(m, s.len()));
            }
        }
        let mut card = 0;
        for e in 0..m {
            let atom = sets.iter().enumerate().fold(0usize, |acc, (i, s)| {
                acc | (usize::from(s.contains(e)) << i)
            });
            if self.truth_table[atom] {
                card += 1;
            }
        }
        Ok(card)
    }
}
