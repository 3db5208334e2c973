use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),

    #[error("invalid modulus {0}: expected 2 <= N <= 2^31")]
    InvalidModulus(u64),

    #[error("invalid modulus {0}: this check requires an odd modulus")]
    EvenModulus(u64),

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("residue {residue} is out of range for modulus {modulus}")]
    InvalidResidue { residue: u64, modulus: u64 },

    #[error("polynomial division leaves a nonzero remainder")]
    NonExactDivision,

    #[error("no period P with 3P <= {len} found")]
    NoPeriodFound { len: usize },

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("class {class} mod {quasi_period}: samples {samples:?} at n = {points:?} are not collinear")]
    NonlinearFit {
        class: usize,
        quasi_period: usize,
        points: [u64; 3],
        samples: [u64; 3],
    },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("outside the domain of the estimate: {0}")]
    DomainError(String),

    #[error("no quasi-period up to {bound} fits the sampled window")]
    NotFound { bound: usize },

    #[error("value too large for this computation: {0}")]
    TooLarge(String),

    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
}
