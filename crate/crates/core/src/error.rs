use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} is outside the domain [1, {domain}]")]
    ElementOutOfRange { element: u64, domain: u32 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("element {element} has degree {degree}, exceeding the bound {bound}")]
    DegreeBound {
        element: u32,
        degree: usize,
        bound: usize,
    },

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("tuple {tuple:?} has arity {found}, relation `{relation}` expects {expected}")]
    Arity {
        relation: String,
        tuple: Vec<u32>,
        expected: usize,
        found: usize,
    },

    #[error(transparent)]
    Query(#[from] crate::db::QueryError),

    #[error("ball with {size} elements exceeds the size cap {cap}")]
    BallTooLarge { size: usize, cap: usize },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid semilinear set: {0}")]
    InvalidSemilinear(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent tester parameters: {0}")]
    Params(String),

    #[error("operation needs a non-empty database")]
    EmptyDatabase,

    #[error("property: {0}")]
    Property(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
