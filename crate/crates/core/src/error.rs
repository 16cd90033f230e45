use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero (degenerate specialization)")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported number of blown-up points r={0}")]
    UnsupportedR(usize),
    #[error("divisor classes live on different surfaces (r={0} vs r={1})")]
    MismatchedR(usize, usize),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("points are not in general position: {0}")]
    GeneralPosition(String),
    #[error("{context}: expected kernel dimension {expected}, found {found}")]
    KernelDimension { context: String, expected: usize, found: usize },
    #[error("anchor mismatch for ruling {0}")]
    AnchorMismatch(String),
    #[error("torsor point has vanishing coordinate {0}")]
    ZeroCoordinate(String),
    #[error("coordinate {0} has a vanishing divisor")]
    VanishingDivisor(String),
    #[error("rescaling factor {0} is zero")]
    ZeroFactor(String),
    #[error("solver stalled: {0}")]
    SolverStalled(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no non-degenerate specialization found after {0} attempts")]
    DegeneracyExhausted(usize),
}
