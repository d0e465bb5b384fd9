use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precision: order {requested} requested but only {available} is known")]
    Precision { requested: usize, available: usize },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("unknown series `{0}` (expected one of F, G, H, D, E, r)")]
    UnknownSeries(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not in span at this precision: {0}")]
    NotInSpan(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed object contradicts a structural property that must hold.
    #[error("consistency failure [{property}]: {detail}")]
    Consistency {
        property: &'static str,
        detail: String,
    },
}

impl Error {
    pub(crate) fn consistency(property: &'static str, detail: impl Into<String>) -> Self {
        Error::Consistency {
            property,
            detail: detail.into(),
        }
    }

    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
