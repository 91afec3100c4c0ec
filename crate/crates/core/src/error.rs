use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} = {value} is out of range (maximum {max})")]
    Range {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("projection onto N = {0} has zero norm")]
    ZeroProjection(usize),

    #[error("harmonic {frequency} aliases with {samples} samples")]
    Aliasing { frequency: usize, samples: usize },

    #[error("undersampled fringe scan: {samples} samples given, at least {required} (4N+1) needed for N = {n}")]
    Undersampled {
        n: usize,
        samples: usize,
        required: usize,
    },
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
