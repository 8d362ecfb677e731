use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
///
/// Precondition violations (bad parameter ranges, shape mismatches) surface as
/// [`Error::InvalidArg`]; file-format problems as [`Error::Format`]; missing
/// ids or files are collected in full before reporting so a caller sees every
/// offender at once.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArg(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image codec error: {0}")]
    Codec(#[from] image::ImageError),

    #[error("jpeg encode error: {0}")]
    JpegEncode(#[from] jpeg_encoder::EncodingError),

    #[error("{context}: malformed file: {detail}")]
    Format { context: String, detail: String },

    #[error("missing {what}: {}", ids.join(", "))]
    Missing { what: String, ids: Vec<String> },

    #[error("{0}")]
    State(String),
}

impl Error {
    pub fn invalid_arg(msg: impl Into<String>) -> Self {
        Error::InvalidArg(msg.into())
    }

    pub fn format(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Format {
            context: context.into(),
            detail: detail.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn missing(what: impl Into<String>, ids: Vec<String>) -> Self {
        Error::Missing {
            what: what.into(),
            ids,
        }
    }
}
