use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("ring size overflows u32")]
    RingTooLarge,

    #[error("cannot parse ring descriptor {input:?}: {reason}")]
    RingParse { input: String, reason: String },

    #[error("cannot parse element {input:?}: {reason}")]
    ElementParse { input: String, reason: String },

    #[error("element index {index} is outside a ring of size {size}")]
    ElementOutOfRange { index: u64, size: u32 },

    #[error("{generators} generators but {coefficients} coefficients")]
    LengthMismatch { generators: usize, coefficients: usize },

    #[error("enumeration target must differ from 0 and 1")]
    TrivialTarget,

    #[error("1 is not nilpotent in a nonzero ring")]
    UnitTarget,

    #[error("enumeration has no target element")]
    MissingTarget,

    #[error("r is not nilpotent: {set} is a prime ideal not containing r")]
    NotInAllPrimes { set: String },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("no verdict found; f and g are probably not inverse to each other")]
    ContractUnmet,

    #[error("f·g ≠ 1")]
    NotInverse,

    #[error("coefficient index {index} must lie in 1..={degree}")]
    CoefficientIndex { index: usize, degree: usize },

    #[error("no termination after {max_iters} steps")]
    CapExceeded { max_iters: usize },

    #[error("functional returned bound {bound} outside an enumeration of length {len}")]
    BoundOutOfRange { bound: usize, len: usize },

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("ring of size {size} exceeds the enumeration bound {bound}")]
    SizeBoundExceeded { size: u32, bound: u32 },

    #[error("exponent overflow while combining witnesses")]
    ExponentOverflow,

    #[error("the predicate fails on the closure of the empty set")]
    EmptyClosureRejected,
}

impl Error {
    /// Errors caused by the caller's input rather than by a bug in the
    /// pipeline (non-nilpotent target, bad inverse, unit target).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotInAllPrimes { .. }
                | Error::NotInverse
                | Error::UnitTarget
                | Error::CoefficientIndex { .. }
                | Error::EmptyClosureRejected
                | Error::SizeBoundExceeded { .. }
        )
    }
}
