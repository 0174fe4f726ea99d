use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("row {row}: value {code} of attribute `{attribute}` is not in its domain")]
    DomainViolation { row: usize, attribute: String, code: u32 },

    #[error("row {row}: duplicate object id `{id}`")]
    DuplicateObject { row: usize, id: String },

    #[error("row {row}: missing value for attribute `{attribute}`")]
    MissingValue { row: usize, attribute: String },

    #[error("no objects")]
    NoObjects,

    #[error("row {row}: value {value} of attribute `{attribute}` falls in no interval")]
    Unbinned { row: usize, attribute: String, value: f64 },

    #[error("invalid discretization for `{attribute}`: {message}")]
    Discretization { attribute: String, message: String },

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("object index {0} is outside the universe")]
    ObjectOutOfRange(usize),

    #[error("split ratio {0} is not in (0, 1)")]
    InvalidRatio(f64),

    #[error("threshold {0} is not in [0, 1]")]
    InvalidThreshold(f64),

    #[error("attribute `{0}` is not a member of the attribute set")]
    NotInSet(String),

    #[error("empty attribute set")]
    EmptyAttributeSet,

    #[error("{count} attributes exceed the exhaustive search cap of {cap}")]
    ReductCapExceeded { count: usize, cap: usize },

    #[error("table must have exactly one decision attribute, found {0}")]
    DecisionArity(usize),

    #[error("decision class {0} is not in the decision domain")]
    UnknownClass(u32),

    #[error("decision class {0} has no objects")]
    EmptyClass(u32),

    #[error("rule list is empty")]
    NoRules,

    #[error("rules conclude different decision classes")]
    MixedClasses,

    #[error("rules `{0}` and `{1}` have identical premises")]
    DuplicatePremise(String, String),

    #[error("concept is not closed in the context")]
    NotClosed,

    #[error("duplicate concept in lattice input")]
    DuplicateConcept,

    #[error("lattice input lacks the {0} concept")]
    MissingConcept(&'static str),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
