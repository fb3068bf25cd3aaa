//! Error types shared across the toolkit.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input that could not be parsed at all (bad JSON, bad plan syntax).
    #[error("parse error{}: {msg}", line_context(.line))]
    Parse {
        /// 1-based line number of the offending input line, when known.
        line: Option<u64>,
        msg: String,
    },

    /// Structurally valid input that violates an invariant (bad spans, empty table).
    #[error("validation error for instance `{id}`: {msg}")]
    Validation { id: String, msg: String },

    /// Instance whose text tokenizes to nothing; metrics are undefined for it.
    #[error("degenerate instance `{id}`: text has no tokens")]
    DegenerateInstance { id: String },

    /// Corpus-level statistics over zero instances.
    #[error("empty corpus: no instances to aggregate")]
    EmptyCorpus,

    /// Caller misuse of an API that cannot be expressed in the type system.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            msg: msg.into(),
        }
    }

    pub fn parse_at(line: u64, msg: impl Into<String>) -> Self {
        Error::Parse {
            line: Some(line),
            msg: msg.into(),
        }
    }

    pub fn validation(id: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation {
            id: id.into(),
            msg: msg.into(),
        }
    }

    /// Attach a line number to a parse or validation error that lacked one.
    pub fn with_line(self, line: u64) -> Self {
        match self {
            Error::Parse { line: None, msg } => Error::Parse {
                line: Some(line),
                msg,
            },
            other => other,
        }
    }
}

fn line_context(line: &Option<u64>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}
