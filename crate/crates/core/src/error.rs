use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),

    #[error("corrupt image data: {0}")]
    Corrupt(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable numeric code per error kind.
    pub fn code(&self) -> u8 {
        match self {
            Error::Shape(_) => 10,
            Error::Param(_) => 11,
            Error::UnsupportedFormat(_) => 20,
            Error::NotFound(_) => 21,
            Error::Corrupt(_) => 22,
            Error::Io(_) => 23,
        }
    }
}

pub(crate) fn shape_mismatch(what: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::Shape(format!("{what}: {}x{} vs {}x{}", a.0, a.1, b.0, b.1))
}
