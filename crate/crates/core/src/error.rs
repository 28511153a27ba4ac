use thiserror::Error;

pub type Result<T> = std::result::Result<T, AuditError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuditError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("power index n = {n} exceeds the exact-factorial cap of {cap}")]
    FactorialCap { n: u32, cap: u32 },

    #[error("index i = {i} out of range 0..={max}")]
    InvalidIndex { i: u32, max: u32 },

    #[error("common difference d is exactly zero")]
    ZeroStep,

    #[error("x = {0} is outside (0, 1) U (1, inf)")]
    InvalidDomain(f64),

    #[error("arctan branch undefined: real part a1 + (x-1) d1 is zero")]
    BranchUndefined,

    #[error("log-domain violation: quotient {0} is not positive")]
    LogDomain(f64),

    #[error("singular trigonometric factor: {0}")]
    Singular(&'static str),

    #[error("pole of {func} at s = {re}{im:+}i")]
    Pole { func: &'static str, re: f64, im: f64 },

    #[error("s = {re}{im:+}i is within the exclusion disk of a zero of 1 - 2^(1-s)")]
    RelationDegenerate { re: f64, im: f64 },

    #[error("s = {re}{im:+}i is outside the evaluation window")]
    OutOfWindow { re: f64, im: f64 },

    #[error("k = m = {0}; the anchors must differ")]
    EqualAnchors(u32),

    #[error("undefined zero candidate: {0}")]
    UndefinedCandidate(String),

    #[error("claim precondition violated: {0}")]
    Precondition(String),
}
