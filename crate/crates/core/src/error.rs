use thiserror::Error;

/// Errors raised by series arithmetic, the Puiseux groups, the text format
/// and the finite-field scan.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision must be positive")]
    ZeroPrecision,

    #[error("not a unit: constant coefficient is 0")]
    NotAUnit,

    #[error("square root undefined: coefficient of t^{0} is 1")]
    OddSupport(usize),

    #[error("odd root requested with even k = {0}")]
    EvenK(u64),

    #[error("denominator {requested} exceeds the cap {cap}")]
    DenominatorOverflow { requested: u128, cap: u64 },

    #[error("scalar {0} is too large")]
    ScalarTooLarge(String),

    #[error("series is indistinguishable from zero at its precision")]
    Indistinguishable,

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unit part must start with the term 1 (byte {pos})")]
    NonUnitLeadingTerm { pos: usize },

    #[error("precision {0} leaves no representable terms")]
    NonpositivePrecision(String),

    #[error("term x^({exponent}) is not below the precision O(x^({precision}))")]
    TermBeyondPrecision { exponent: String, precision: String },

    #[error("exponents must be strictly increasing (byte {pos})")]
    ExponentNotIncreasing { pos: usize },

    #[error("{0} is outside the supported range")]
    OutOfRange(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
