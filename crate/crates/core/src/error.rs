use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characters belong to different group tables ({0} vs {1})")]
    TableMismatch(String, String),

    #[error("invalid class id {0}")]
    InvalidClass(String),

    #[error("unknown irreducible character {0}")]
    UnknownIrreducible(String),

    #[error("unknown group table {0}")]
    UnknownGroup(String),

    #[error("inconsistent group table: {0}")]
    InvalidTable(String),

    #[error("class function is not a virtual character: {0}")]
    NotVirtualCharacter(String),

    #[error("expected an irreducible character")]
    NotIrreducible,

    #[error("operation requires a genuine character (nonnegative coefficients)")]
    NotACharacter,

    #[error("prime {p} divides the discriminant; local data needs an override or bracketing")]
    RamifiedPrime { p: u64 },

    #[error("prime {p} too large for 64-bit modular arithmetic")]
    PrimeTooLarge { p: u64 },

    #[error("no class declared for degree pattern {pattern} (prime {p})")]
    MissingPattern { pattern: String, p: u64 },

    #[error("ramified override at {p} has no eigenvalue data for irreducible {irreducible}")]
    IncompleteOverride { p: u64, irreducible: String },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("precision budget exceeded: {0}")]
    PrecisionBudget(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("found {count} real zeros in the exceptional region for conductor {q}; at most one is possible")]
    ZeroAnomaly { q: u64, count: usize },

    #[error("missing truncation length for irreducible {0}")]
    MissingTruncation(String),

    #[error("missing conductor for {0}")]
    MissingConductor(String),

    #[error("artin conductor valuation {0} is not a nonnegative integer")]
    NonIntegralValuation(String),

    #[error("{0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
