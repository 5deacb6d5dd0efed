use thiserror::Error;

/// A rational literal that is not of the form `"n"` or `"n/d"`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational literal {0:?}")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra document: {0}")]
    Json(String),

    #[error("{location}: unknown generator {name:?}")]
    UnknownGenerator { location: String, name: String },

    #[error("{location}: duplicate generator {name:?} in basis")]
    DuplicateGenerator { location: String, name: String },

    #[error("{location}: duplicate bracket [{a}, {b}]")]
    DuplicateBracket {
        location: String,
        a: String,
        b: String,
    },

    #[error("{location}: diagonal bracket [{name}, {name}] is identically zero")]
    DiagonalBracket { location: String, name: String },

    #[error("{location}: {source}")]
    MalformedCoefficient {
        location: String,
        source: ParseScalarError,
    },

    #[error("element is indexed over a basis of size {found}, algebra has {expected}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("generator subset {subset:?} is not closed under the bracket")]
    SubsetNotClosed { subset: Vec<String> },

    #[error("family {family}: {reason}")]
    InvalidParameters { family: String, reason: String },

    #[error("cannot combine elements of {left} and {right}")]
    FamilyMismatch { left: String, right: String },

    #[error("family {family}: matrix does not match the template ({reason})")]
    TemplateMismatch { family: String, reason: String },

    #[error("commutator [{a}, {b}] is not in the span of the generators")]
    NotInSpan { a: String, b: String },

    #[error("singular matrix")]
    Singular,

    #[error(
        "ansatz needs {monomials} monomials up to degree {degree}, above the ceiling of {ceiling}"
    )]
    CeilingExceeded {
        monomials: usize,
        degree: usize,
        ceiling: usize,
    },

    #[error("{label} does not commute with {generator}")]
    NotCasimir { label: String, generator: String },

    #[error("unknown catalog group {0:?}")]
    UnknownGroup(String),

    #[error("group {group} is not available for n = {n}")]
    UnsupportedDimension { group: String, n: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
