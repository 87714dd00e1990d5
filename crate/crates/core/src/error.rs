use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("order contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("no least element; declare a bottom or enable automatic bottom insertion")]
    NoLeastElement,
    #[error("`{0}` is not below every element")]
    NotBottom(String),
    #[error("rule {rule} uses default negation where a negation-free program is required")]
    NegationNotAllowed { rule: usize },
    #[error("{what} is {actual}, above the configured bound of {limit}")]
    BoundExceeded { what: &'static str, limit: usize, actual: usize },
    #[error("rule {rule} is not propositional: {reason}")]
    NotPropositional { rule: usize, reason: String },
    #[error("objects and attributes share the name `{0}`")]
    OverlappingNames(String),
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax { line, column, message: message.into() }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
