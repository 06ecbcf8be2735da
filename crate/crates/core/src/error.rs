use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("slope must be positive, got {0}")]
    NonPositiveSlope(String),
    #[error("slope {0} exceeds 1 and has no all-positive expansion")]
    SlopeAboveOne(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("continued fraction is empty")]
    EmptyContinuedFraction,
    #[error("continued fraction terms must be nonzero and share one sign: {0}")]
    MixedSignRegime(String),
    #[error("operation requires the positive regime")]
    NegativeRegime,
    #[error("term index {index} invalid for decrement (length {len}, term must be at least 2)")]
    InvalidDecrement { index: usize, len: usize },
    #[error("tangle ({alpha},{beta}) is not a coprime pair with alpha >= 1")]
    InvalidTangle { alpha: String, beta: String },
    #[error("presentation has no tangles")]
    EmptyPresentation,
    #[error("classification hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("pretzel parameter must be nonzero")]
    ZeroPretzelParameter,
    #[error("pretzel parameter {0} has magnitude below 2")]
    PretzelParameterTooSmall(i64),
    #[error("pretzel shape not covered: {0}")]
    PretzelShape(String),
    #[error("unknown Widmer family {0}")]
    UnknownFamily(u8),
    #[error("family {family} expects {expected} parameters, got {got}")]
    FamilyArity { family: u8, expected: usize, got: usize },
    #[error("crossing locator {0} out of range")]
    InvalidLocator(usize),
    #[error("twist count {0} too large to draw")]
    TooManyCrossings(String),
    #[error("bracket oracle limited to {cap} crossings, diagram has {got}")]
    BracketCap { cap: usize, got: usize },
    #[error("replacement does not extend a crossing of sign {0}")]
    RegimeMismatch(i8),
    #[error("determinant must be at least 1")]
    DeterminantTooSmall,
    #[error("budget must be positive")]
    InvalidBudget,
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),
    #[error("no certificate found at crossing {0} of the base")]
    BaseNotCertified(usize),
    #[error("catalog: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
