//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum LabError {
    /// An evaluation grid was too coarse for alias-free quadrature.
    #[error("grid too small: got {got} angular nodes, need at least {required}")]
    GridTooSmall { required: usize, got: usize },

    /// Block dimensions or matrix sizes of two operands do not match.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A parameter lies outside the domain where the operation is defined.
    #[error("refused parameter: {0}")]
    RefusedParameter(String),

    /// Dense spectral computations are capped to keep runtime desk-scale.
    #[error("size cap exceeded: {got} > {cap} ({what})")]
    SizeCapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    /// Experiment configuration could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
