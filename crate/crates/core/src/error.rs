use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} is out of range for a group of order {order}")]
    InvalidElement { index: usize, order: usize },

    #[error("invalid modulus {0}: every cyclic factor needs modulus >= 1")]
    InvalidModulus(u64),

    #[error("group order overflows the index type")]
    OrderOverflow,

    #[error("operands live in different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("{0} requires a non-empty set")]
    EmptySet(&'static str),

    #[error("invalid arity n={n}, m={m}: need n + m >= 1")]
    InvalidArity { n: usize, m: usize },

    #[error("{what} is {value}, above the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("the psi table was not built from this set")]
    TableMismatch,

    #[error("Petridis hypothesis fails for subset {violating}")]
    Hypothesis { violating: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("output error: {0}")]
    Output(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl Error {
    pub(crate) fn cap(what: &'static str, value: usize, cap: usize) -> Self {
        Error::CapExceeded { what, value, cap }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
