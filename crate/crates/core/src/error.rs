use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },
    #[error("{0} is neither zero nor prime")]
    NotPrimeOrZero(u64),
    #[error("operation requires a prime, got {0}")]
    PrimeRequired(u64),
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u64, right: u64 },
    #[error("ghost vector is not in the image of the mark map (integrality fails at C_{divisor})")]
    NotInGhostImage { divisor: u64 },
    #[error("ghost vector at level {level} must be indexed by exactly the divisors of the level")]
    MalformedGhost { level: u64 },
    #[error("negative coefficient {coeff} on C_{level}/C_{stabilizer} has no concrete G-set")]
    NegativeCoefficient {
        level: u64,
        stabilizer: u64,
        coeff: String,
    },
    #[error("enumeration of {needed} maps exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("permutation is not a valid C_{level}-action: {reason}")]
    InvalidAction { level: u64, reason: String },
    #[error("S_{j} has more than one maximal element")]
    NonUniqueMaximum { j: u64 },
    #[error("lattice at level {level} is not closed under multiplication by t_{m}")]
    NotAnIdeal { level: u64, m: u64 },
    #[error("ambient group mismatch: C_{left} vs C_{right}")]
    AmbientMismatch { left: u64, right: u64 },
    #[error("invalid prime set: {0}")]
    InvalidPrimeSet(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroOrder => "zero_order",
            Error::NotADivisor { .. } => "not_a_divisor",
            Error::NotPrimeOrZero(_) => "not_prime_or_zero",
            Error::PrimeRequired(_) => "prime_required",
            Error::LevelMismatch { .. } => "level_mismatch",
            Error::NotInGhostImage { .. } => "not_in_ghost_image",
            Error::MalformedGhost { .. } => "malformed_ghost",
            Error::NegativeCoefficient { .. } => "negative_coefficient",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::InvalidAction { .. } => "invalid_action",
            Error::NonUniqueMaximum { .. } => "non_unique_maximum",
            Error::NotAnIdeal { .. } => "not_an_ideal",
            Error::AmbientMismatch { .. } => "ambient_mismatch",
            Error::InvalidPrimeSet(_) => "invalid_prime_set",
            Error::Parse(_) => "parse",
        }
    }
}
