use crate::geometry::Region;
use crate::specfun::DomainError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("special function: {0}")]
    Domain(#[from] DomainError),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    /// A dense solve hit a (numerically) singular matrix. For the admittance
    /// construction this flags an interior Dirichlet eigenfrequency.
    #[error(
        "{matrix} is singular or ill-conditioned (condition estimate {condition:.3e}) \
         at {frequency:.6e} Hz{}",
        context.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default()
    )]
    Singular {
        matrix: String,
        condition: f64,
        frequency: f64,
        context: Option<String>,
    },

    #[error("point {index} at ({x}, {y}) is {found:?}, expected {expected:?}")]
    Region {
        index: usize,
        x: f64,
        y: f64,
        found: Region,
        expected: Region,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Geometry(_) => "geometry",
            Error::Singular { .. } => "singular",
            Error::Region { .. } => "region",
        }
    }
}
