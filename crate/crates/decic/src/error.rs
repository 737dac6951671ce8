use thiserror::Error;

/// Errors produced by the library. Anything that is a *verdict* (a code
/// failing a criterion, a condition being violated) is reported through the
/// report types instead; errors are reserved for ill-posed inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {q} is not a prime in 2..=251")]
    InvalidModulus { q: u64 },

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u16, right: u16 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "receiver R{receiver} demands a message it already has (f({receiver}) ∈ χ_{receiver})"
    )]
    DemandInSideInfo { receiver: usize },

    #[error("receiver R{receiver} references message index {index}, outside 1..={n}")]
    IndexOutOfRange {
        receiver: usize,
        index: usize,
        n: usize,
    },

    #[error("invalid problem: {0}")]
    BadProblem(String),

    #[error("infeasible profile at R{receiver}: 2·δ = {two_delta} exceeds code length {code_len}")]
    InfeasibleProfile {
        receiver: usize,
        two_delta: usize,
        code_len: usize,
    },

    #[error("label {label} is not in the ground set")]
    UnknownLabel { label: u32 },

    #[error("ground set too large for exhaustive check: {size} > {max}")]
    GroundSetTooLarge { size: usize, max: usize },

    #[error("input set is dependent, cannot extend to a basis")]
    DependentSet,

    #[error("column {col} of the code matrix is zero; no certificate exists (condition B1)")]
    ZeroColumn { col: usize },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("certificate precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("search space too large: {candidates} canonical candidates exceed ceiling {ceiling}")]
    SearchSpaceTooLarge { candidates: u128, ceiling: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
