use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FaError {
    #[error("membership degree {0} is outside [0,1]")]
    DegreeOutOfRange(f64),
    #[error("referential set must be non-empty")]
    EmptyReferential,
    #[error("set lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("expected {expected} argument sets, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("truth table length {got} does not match arity {arity} (expected {expected})")]
    TruthTableLength {
        arity: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid shape parameters: {0}")]
    InvalidShape(String),
    #[error("cardinality index {index} exceeds referential size {m}")]
    CardinalityOutOfRange { index: usize, m: usize },
    #[error("enumeration budget exceeded: 2^{bits} subset tuples (limit 2^{limit})")]
    OracleBudgetExceeded { bits: u32, limit: u32 },
    #[error("tensor of {required} bytes exceeds the memory cap of {cap} bytes")]
    TensorMemoryExceeded { required: usize, cap: usize },
    #[error("quantifier is not in binary conservative form")]
    NotConservative,
    #[error("quantifier has no proportional (normalized) cardinality function")]
    NoProportionalForm,
    #[error("shapes do not form a partition of unity: sum {sum} at x={x}")]
    InvalidPartition { x: f64, sum: f64 },
    #[error("unknown catalog quantifier: {0}")]
    UnknownQuantifier(String),
    #[error("invalid parameters for catalog quantifier {name}: {reason}")]
    InvalidCatalogParams { name: String, reason: String },
}
