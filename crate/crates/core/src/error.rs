use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("not a cycle: {0}")]
    NotCycle(String),

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(String),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("complex is not pure: {0}")]
    NotPure(String),

    #[error("descent equation unsolvable at s = {s}, degree {degree}")]
    DescentObstruction { s: usize, degree: i64 },

    #[error("support assertion failed: {0}")]
    Support(String),

    #[error("torsion in degree {degree} where a free complex is required (divisors {divisors})")]
    Torsion { degree: i64, divisors: String },

    #[error("lifting failed: {0}")]
    Lifting(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("wrong dimension: {0}")]
    WrongDimension(String),

    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl Error {
    /// Stable name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Precondition(_) => "precondition",
            Error::InvalidComplex(_) => "invalid_complex",
            Error::NotChainMap(_) => "not_chain_map",
            Error::NotCycle(_) => "not_cycle",
            Error::UnknownSimplex(_) => "unknown_simplex",
            Error::NotSimplicial(_) => "not_simplicial",
            Error::NotPure(_) => "not_pure",
            Error::DescentObstruction { .. } => "descent_obstruction",
            Error::Support(_) => "support",
            Error::Torsion { .. } => "torsion",
            Error::Lifting(_) => "lifting",
            Error::InvalidDiagram(_) => "invalid_diagram",
            Error::WrongDimension(_) => "wrong_dimension",
            Error::Format(_) => "format",
        }
    }
}
