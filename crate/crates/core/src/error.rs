use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular system: no unique solution")]
    SingularSystem,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unbounded threshold: the ray never leaves the cone")]
    UnboundedThreshold,

    #[error("start point is not in the cone")]
    StartNotInCone,

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: String },

    #[error("Cremona reflection undefined for n = {n} (needs n >= 3)")]
    CremonaUndefined { n: usize },

    #[error("orbit exceeded the bound of {bound} elements")]
    OrbitBoundExceeded { bound: usize },

    #[error("effective cone is not finitely generated for n = {n}")]
    ConeNotFinitelyGenerated { n: usize },

    #[error("class is not pseudo-effective")]
    NotPseudoEffective,

    #[error("class is not big")]
    NotBig,

    #[error("class is not nef")]
    NotNef,

    #[error("class is not integral")]
    NotIntegral,

    #[error("n = 9 requires the Seshadri/rescale pipeline")]
    RequiresSeshadriPipeline,

    #[error("predicted non-big: d < sqrt(n)*m")]
    PredictedNonBig,

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("cannot parse {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }

    pub fn out_of_range(what: &'static str, value: impl ToString) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
        }
    }

    /// Errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::OutOfRange { .. } | Error::DimensionMismatch { .. }
        )
    }
}
