use thiserror::Error;

/// Errors produced by kernel operations.
///
/// `Domain` covers violated mathematical preconditions (index out of range,
/// degree overflow, wrong jet order). `Dimension` covers mismatched ambient
/// or fiber dimensions between operands. `Incompatible` is raised by gluing
/// when local pieces disagree on an overlap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("incompatible pieces on overlap of K_{a} and K_{b}: max deviation {deviation}")]
    Incompatible { a: usize, b: usize, deviation: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
