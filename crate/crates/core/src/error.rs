use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus is reducible over F_{p}: divisible by {factor:?}")]
    ReducibleModulus { p: u32, factor: Vec<u32> },
    #[error("modulus has {got} coefficients, expected {expected} for a monic polynomial of degree {degree}")]
    DegreeMismatch {
        degree: u32,
        expected: usize,
        got: usize,
    },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {0} exceeds the table limit")]
    FieldTooLarge(u64),
    #[error("no element of multiplicative order {order} in a field with {size} elements")]
    NoSuchRoot { order: u64, size: u64 },
    #[error("field element {0:?} is not a valid encoding")]
    BadElement(Vec<u32>),
    #[error("cannot embed F_{{{p}^{from}}} into F_{{{p2}^{to}}}")]
    NoEmbedding { p: u32, from: u32, p2: u32, to: u32 },
    #[error("q has multiplicative order {got}, expected {expected}")]
    WrongRootOrder { expected: u64, got: u64 },
    #[error("invalid algebra parameters: {0}")]
    InvalidAlgebra(String),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("point is zero")]
    ZeroPoint,
    #[error("module violates its defining relations: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("betti sequence of length {0} is too short (need at least 8)")]
    TooShort(usize),
    #[error("need counts from at least two extension levels")]
    TooFewLevels,
    #[error("no extension field of order {0} is available")]
    ExtensionUnavailable(u64),
    #[error("chain map lifting failed: {0}")]
    LiftingFailure(String),
    #[error("degree bound {bound} does not fit a resolution window of length {max_deg}")]
    WindowTooSmall { bound: usize, max_deg: usize },
    #[error("generator assignment does not extend to a module map: {0}")]
    GeneratorExtensionFailure(String),
    #[error("points are not perpendicular: sum mu_i lambda_i^a = {0:?}")]
    PerpViolation(Vec<u32>),
    #[error("map is not injective (rank {rank}, source dimension {dim})")]
    NotInjective { rank: usize, dim: usize },
    #[error("module is not a period-one module with a single-line variety: {0}")]
    NotPeriodicCatalogEntry(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("parse error in {path}: {message} at line {line}, column {column}")]
    Parse {
        path: String,
        message: String,
        line: usize,
        column: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by the caller's input rather than by a failed computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::LiftingFailure(_)
                | Error::GeneratorExtensionFailure(_)
                | Error::NotInjective { .. }
                | Error::TooShort(_)
                | Error::TooFewLevels
        )
    }
}
