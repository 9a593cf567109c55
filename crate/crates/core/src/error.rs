use std::path::PathBuf;

/// Everything that can go wrong across the library, from corpus validation to
/// backend transport failures. CLI exit codes are derived from the variant via
/// [`Error::is_validation`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown event type label {0:?}")]
    UnknownEventType(String),

    #[error("role {role:?} is not valid for event type {event_type:?}")]
    InvalidRole { event_type: String, role: String },

    #[error("span {start}..{end} is out of bounds or inconsistent for text of length {len}: {detail}")]
    Offset {
        start: usize,
        end: usize,
        len: usize,
        detail: String,
    },

    #[error("trigger span {start}..{end} does not coincide with token boundaries in sentence {sentence_id:?}")]
    SpanTokenMismatch {
        sentence_id: String,
        start: usize,
        end: usize,
    },

    #[error("overlapping trigger spans in sentence {sentence_id:?} ({a_start}..{a_end} and {b_start}..{b_end})")]
    OverlappingTriggers {
        sentence_id: String,
        a_start: usize,
        a_end: usize,
        b_start: usize,
        b_end: usize,
    },

    #[error("length mismatch: {detail}")]
    LengthMismatch { detail: String },

    #[error("no question template for event type {event_type:?} and role {role:?}")]
    MissingTemplate { event_type: String, role: String },

    #[error("logit tensor shape does not match input: {detail}")]
    ShapeMismatch { detail: String },

    #[error("{operation} backend error: {detail}")]
    Backend { operation: String, detail: String },

    #[error("aborted after {} backend failure(s); first: {}", failures.len(), failures.first().map(String::as_str).unwrap_or(""))]
    AlignmentIo { failures: Vec<String> },

    #[error("invalid {what}: {detail}")]
    Format { what: String, detail: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error in {context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }

    pub fn format(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Format {
            what: what.into(),
            detail: detail.into(),
        }
    }

    pub fn backend(operation: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Backend {
            operation: operation.into(),
            detail: detail.into(),
        }
    }

    /// True for errors caused by malformed input or configuration (CLI exit
    /// code 1), false for environment trouble such as i/o and client
    /// transport failures (CLI exit code 2).
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Io { .. } | Error::Backend { .. } | Error::AlignmentIo { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
