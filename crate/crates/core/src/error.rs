use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Shapes that do not line up, or a qubit count outside the supported range.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A value violates the invariants of the type it is being turned into.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// Terms of a Hamiltonian disagree on the number of qubits.
    #[error("hamiltonian spec error: {0}")]
    Spec(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    /// An objective evaluated to NaN or infinity while probing one coordinate.
    #[error("non-finite objective value while probing coordinate {coordinate}")]
    NonFinite { coordinate: usize },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }
}
