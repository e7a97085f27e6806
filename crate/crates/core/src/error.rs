use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller handed us something outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An identity that must hold for every valid input did not. This is
    /// always a bug in the computation, never a property of the input.
    #[error("consistency failure ({theorem}): {detail}")]
    Consistency { theorem: &'static str, detail: String },

    /// The cofactor oracle refuses matrices above its configured size.
    #[error("oracle refused a {size}x{size} matrix (bound {bound})")]
    OracleBound { size: usize, bound: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn consistency(theorem: &'static str, detail: impl Into<String>) -> Self {
        Error::Consistency { theorem, detail: detail.into() }
    }
}
