use thiserror::Error;

/// Errors raised while building, parsing or checking cells and presentations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("{line}:{column}: {message}")]
    File {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },

    #[error("cells are not {k}-composable: {detail}")]
    NotComposable { k: usize, detail: String },

    #[error("could not decide {k}-composability within budget: {detail}")]
    CompositionUnknown { k: usize, detail: String },

    #[error("boundary of a 0-dimensional cell")]
    ZeroDimensionalBoundary,

    #[error("attaching cells of `{name}` are not parallel: {detail}")]
    NotParallel { name: String, detail: String },

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("generating graph has a directed cycle through `{0}`")]
    CyclicGraph(String),

    #[error("degree {k} out of range (complex has degrees 0..={max})")]
    DegreeOutOfRange { k: usize, max: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Reattach a column-only parse error to a line of a file.
    pub fn at_line(self, line: usize, offset: usize) -> Error {
        match self {
            Error::Parse { column, message } => Error::File {
                line,
                column: column + offset,
                message,
            },
            Error::File { .. } => self,
            other => Error::File {
                line,
                column: offset + 1,
                message: other.to_string(),
            },
        }
    }
}
