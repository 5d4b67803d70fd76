use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty set")]
    EmptySet,
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element {element} does not belong to the group with invariant factors {factors:?}")]
    ElementOutsideGroup { element: String, factors: Vec<u64> },
    #[error("support outside [1,{0}]")]
    SupportOutsideInterval(i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("u must be invertible modulo {0}")]
    NotInvertible(u64),
    #[error("no admissible shift: need p > k+1 (p={p}, k={k})")]
    NoAdmissibleShift { p: u64, k: u64 },
    #[error("shift t={t} outside [0, {max}]")]
    ShiftOutOfRange { t: u64, max: i64 },
    #[error("wrong ambient group: {0}")]
    WrongAmbientGroup(String),
    #[error("input certificate failed: {what} (witness {witness})")]
    CertificateFailed { what: String, witness: String },
    #[error("g={g} exceeds the group order {order}")]
    GExceedsOrder { g: u64, order: u64 },
    #[error("probability {0} outside [0,1]")]
    ProbabilityOutOfRange(String),
    #[error("N too small for L (N={n}, L={l})")]
    WindowTooLarge { n: u64, l: u64 },
    #[error("averages not admissible: probability exceeds 1 at index {0}")]
    AveragesNotAdmissible(i64),
    #[error("support outside [0,1]")]
    SupportOutsideUnit,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
