use std::io;

/// Errors surfaced by the library and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad input from the caller: malformed descriptors, out-of-range indices,
    /// incompatible space/map combinations.
    #[error("usage error: {0}")]
    Usage(String),

    /// A descriptor or data file token that could not be parsed.
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 1 for usage problems, 3 for runtime I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse { .. } => 1,
            Error::Io { .. } | Error::Csv(_) | Error::Json(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
