use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}D vs {1}D")]
    DimensionMismatch(u8, u8),

    #[error("surfaces do not intersect (center distance {distance}, radii {radius_a} and {radius_b})")]
    NoIntersection {
        distance: f64,
        radius_a: f64,
        radius_b: f64,
    },

    #[error("unsupported order {order} (supported: {min}..={max})")]
    UnsupportedOrder { order: usize, min: usize, max: usize },

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("parse error at position {position}: {message} (near `{token}`)")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("numeric failure: {message} (interval [{lower}, {upper}], error estimate {error_estimate:e})")]
    NumericFailure {
        message: String,
        lower: f64,
        upper: f64,
        error_estimate: f64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            token: token.into(),
            message: message.into(),
        }
    }
}
