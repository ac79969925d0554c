use std::fmt;

use thiserror::Error;

/// Which configured resource cap was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    /// Consistency/entailment checks performed by one subset enumeration.
    SubsetChecks,
    /// Atoms in a truth-table or model enumeration.
    Atoms,
    /// Clauses produced by CNF distribution.
    Clauses,
    /// Models or prime-implicate candidates materialized.
    Models,
    /// Entries held by a saturated biweighted base.
    ParaClauses,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::SubsetChecks => "subset checks",
            Resource::Atoms => "atoms",
            Resource::Clauses => "clauses",
            Resource::Models => "models",
            Resource::ParaClauses => "biweighted clauses",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),

    #[error("resource cap exceeded: more than {limit} {resource}")]
    CapExceeded { resource: Resource, limit: u64 },

    #[error("duplicate formula `{formula}` at indices {first} and {second}")]
    DuplicateFormula {
        formula: String,
        first: usize,
        second: usize,
    },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid layering: {0}")]
    InvalidLayers(String),

    #[error("goal mentions atoms outside the base vocabulary: {}", .atoms.join(", "))]
    VocabularyMismatch { atoms: Vec<String> },

    #[error("clauses do not clash on any literal")]
    NoClash,

    #[error("clauses clash on more than one literal")]
    MultipleClash,

    #[error("`{0}` is not a clause")]
    NotAClause(String),

    #[error("at least one source is required")]
    NoSources,

    #[error("duplicate source name `{0}`")]
    DuplicateSource(String),

    #[error("at least one query is required")]
    NoQueries,
}

impl Error {
    pub fn cap(resource: Resource, limit: u64) -> Self {
        Error::CapExceeded { resource, limit }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
