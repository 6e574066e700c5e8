use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(String),
    #[error("polynomial is not squarefree over the rationals")]
    NotSquarefree,
    #[error("field is not totally real: {real_roots} real roots for degree {degree}")]
    NotTotallyReal { real_roots: usize, degree: usize },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the order is not declared maximal; prime splitting cannot be read from the minimal polynomial")]
    NonMaximalOrder,
    #[error("zeta cutoff {cutoff} too small: tail estimate {tail:.3e} exceeds tolerance {tolerance:.3e}")]
    CutoffTooSmall { cutoff: usize, tail: f64, tolerance: f64 },
    #[error("zeta cutoff {cutoff} does not cover norms up to {needed}")]
    CutoffMismatch { cutoff: usize, needed: u64 },
    #[error("unit {index} has norm {norm}, not ±1")]
    NotAUnit { index: usize, norm: String },
    #[error("units are multiplicatively dependent (regulator {0:.3e})")]
    DependentUnits(f64),
    #[error("expected {expected} fundamental units, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("field of degree {0} needs fundamental units in the field document")]
    MissingUnits(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("enumeration exceeded the budget of {budget} candidate nodes")]
    BoxTooLarge { budget: u64 },
    #[error("SNR grid is empty")]
    EmptyGrid,
    #[error("count table has no {0} column")]
    MissingColumn(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported precision: {0} bits (at most 100)")]
    PrecisionUnsupported(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Name of the variant, used in CLI and FFI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotMonic(_) => "NotMonic",
            Error::NotSquarefree => "NotSquarefree",
            Error::NotTotallyReal { .. } => "NotTotallyReal",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::NotPrime(_) => "NotPrime",
            Error::NonMaximalOrder => "NonMaximalOrder",
            Error::CutoffTooSmall { .. } => "CutoffTooSmall",
            Error::CutoffMismatch { .. } => "CutoffMismatch",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::DependentUnits(_) => "DependentUnits",
            Error::WrongRank { .. } => "WrongRank",
            Error::MissingUnits(_) => "MissingUnits",
            Error::EmptyInput => "EmptyInput",
            Error::BoxTooLarge { .. } => "BoxTooLarge",
            Error::EmptyGrid => "EmptyGrid",
            Error::MissingColumn(_) => "MissingColumn",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::PrecisionUnsupported(_) => "PrecisionUnsupported",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }

    /// True for failures caused by a resource limit (budget or series cutoff)
    /// rather than by invalid input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::BoxTooLarge { .. } | Error::CutoffTooSmall { .. } | Error::CutoffMismatch { .. })
    }

    pub fn hint(&self) -> &'static str {
        match self {
            Error::NotMonic(_) => "scale the generator so the minimal polynomial is monic",
            Error::NotSquarefree => "supply the irreducible minimal polynomial",
            Error::NotTotallyReal { .. } => "only totally real fields are supported",
            Error::InvalidPolynomial(_) => "min_poly must list at least three ascending coefficients",
            Error::NotPrime(_) => "pass a prime",
            Error::NonMaximalOrder => "set assume_maximal_order to true for a monogenic field",
            Error::CutoffTooSmall { .. } => "raise --zeta-cutoff",
            Error::CutoffMismatch { .. } => "raise --zeta-cutoff or lower --max-norm",
            Error::NotAUnit { .. } => "check the fundamental_units coordinates",
            Error::DependentUnits(_) => "supply independent units",
            Error::WrongRank { .. } => "supply degree-1 fundamental units",
            Error::MissingUnits(_) => "add fundamental_units to the field document",
            Error::EmptyInput => "pass at least one element",
            Error::BoxTooLarge { .. } => "lower --radius or raise --budget",
            Error::EmptyGrid => "use at least one SNR point",
            Error::MissingColumn(_) => "run the estimate step on a table with exact counts",
            Error::InvalidParameter(_) => "check the argument values",
            Error::PrecisionUnsupported(_) => "use --precision-bits 100 or less",
            Error::Io(_) => "check the file path",
            Error::Json(_) => "check the JSON document",
            Error::Csv(_) => "check the CSV file",
        }
    }
}
