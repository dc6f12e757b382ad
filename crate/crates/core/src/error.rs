use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error names printed by the
/// command-line front end, so they are part of the public contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} is outside the complex (degrees {lo}..={hi})")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },
    #[error("not a complex: d_{degree} composed with d_{next} is nonzero", next = degree + 1)]
    NotAComplex { degree: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field of order {p}^{d} exceeds the discrete-log table bound 2^20")]
    TooLarge { p: u64, d: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("the characteristic {p} divides the modulus {m}")]
    CharDividesModulus { p: u64, m: u64 },
    #[error("the zero element has no norm or logarithm")]
    ZeroElement,
    #[error("degree {0} is not supported here")]
    DegreeUnsupported(usize),
    #[error("series is not congruent to 1 modulo the maximal ideal")]
    NotAOneUnit,
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("twist mismatch: m = {m} does not divide q - 1 = {q_minus_one}")]
    TwistMismatch { m: u64, q_minus_one: u64 },
    #[error("bad place: {0}")]
    BadPlace(String),
    #[error("support not covered: {0}")]
    SupportNotCovered(String),
    #[error("unsupported window (i, j) = ({i}, {j})")]
    UnsupportedWindow { i: i64, j: i64 },
    #[error("homology still changing at the maximal support degree {max_degree}")]
    NotStabilized { max_degree: usize },
    #[error("malformed filtration: {0}")]
    MalformedFiltration(String),
    #[error("hypothesis failed: E_2^{{{p},{q}}} is nonzero with p > q")]
    HypothesisFailed { p: usize, q: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable identifier used in reports and on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::NotAComplex { .. } => "NotAComplex",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::CharDividesModulus { .. } => "CharDividesModulus",
            Error::ZeroElement => "ZeroElement",
            Error::DegreeUnsupported(_) => "DegreeUnsupported",
            Error::NotAOneUnit => "NotAOneUnit",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::TwistMismatch { .. } => "TwistMismatch",
            Error::BadPlace(_) => "BadPlace",
            Error::SupportNotCovered(_) => "SupportNotCovered",
            Error::UnsupportedWindow { .. } => "UnsupportedWindow",
            Error::NotStabilized { .. } => "NotStabilized",
            Error::MalformedFiltration(_) => "MalformedFiltration",
            Error::HypothesisFailed { .. } => "HypothesisFailed",
            Error::Parse { .. } => "ParseError",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
