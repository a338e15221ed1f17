use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not a prime >= 3")]
    NotPrime(u64),
    #[error("degenerate character: lambda = 0 mod {0}")]
    DegenerateCharacter(u64),
    #[error("not a realization kernel: lambda = 0 mod {0}")]
    NotRealizationKernel(u64),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("malformed base: size {size} does not factor as S x F_{prime}^{dims}")]
    MalformedBase { size: usize, prime: u64, dims: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("zero element has no degree")]
    ZeroElement,
    #[error("zero ideal input")]
    ZeroIdealInput,
    #[error("zero module")]
    ZeroModule,
    #[error("{0} supported only for principal ideals")]
    NonPrincipal(&'static str),
    #[error("operator has d-order 0")]
    ZeroOrder,
    #[error("module is not holonomic (dimension {0})")]
    NotHolonomic(usize),
    #[error("no stabilization certificate up to degree {0}")]
    NoCertificate(u32),
    #[error("restriction unsupported for this module: {0}")]
    RestrictionUnsupported(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable '{name}' for n = {n}")]
    UnknownVariable { name: String, n: usize },
    #[error("invalid rational '{0}'")]
    InvalidRational(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for errors caused by bad input rather than by the engine.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::NoCertificate(_))
    }
}
