use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero vector has no length")]
    ZeroVector,
    #[error("register too small: width {width} < base length {base_length}")]
    RegisterTooSmall { width: usize, base_length: usize },
    #[error("string length {len} exceeds maximum supported length {max}")]
    StringTooLong { len: usize, max: usize },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("vectors are not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("prefix violation: vector {0} is a prefix of vector {1}")]
    PrefixViolation(usize, usize),
    #[error("not decodable by given basis: {0}")]
    NotDecodable(String),
    #[error("subspaces are not orthogonal")]
    NotOrthogonal,
    #[error("ensemble has {items} states; exhaustive search is capped at {cap}")]
    TooManyStates { items: usize, cap: usize },
    #[error("Kraft inequality violated: sum {sum} > 1")]
    KraftViolated { sum: f64 },
    #[error("state not in code domain (residual {residual:e})")]
    OutsideDomain { residual: f64 },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("malformed side-channel header: {0}")]
    MalformedHeader(String),
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("channel steps exhausted at step {0}")]
    StepsExhausted(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
