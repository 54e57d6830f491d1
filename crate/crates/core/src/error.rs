use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("{stat} is undefined on the empty permutation")]
    UndefinedOnEmpty { stat: &'static str },

    #[error("binary containment needs 0/1 entries, found {0}")]
    NotBinary(usize),

    #[error("{0} is not a Fishburn permutation")]
    NotFishburn(String),

    #[error("site {site} is out of range for a permutation of length {len}")]
    SiteOutOfRange { site: usize, len: usize },

    #[error("not an ascent sequence: entry {value} at index {index} exceeds bound {bound}")]
    NotAscentSequence { index: usize, value: usize, bound: usize },

    #[error("label {label} at index {index} exceeds the {available} active sites available")]
    SiteIndexOverflow { index: usize, label: usize, available: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{perm} is not in the class of tree {tree}")]
    NotInClass { tree: String, perm: String },

    #[error("label rules are ambiguous or exhausted for {perm} in tree {tree}")]
    LabelRuleViolated { tree: String, perm: String },

    #[error("unknown generating function {name:?}; known: {known}")]
    UnknownGf { name: String, known: String },

    #[error("unknown closed form {name:?}; known: {known}")]
    UnknownClosedForm { name: String, known: String },

    #[error("{name} requires parameter {param}")]
    MissingParameter { name: String, param: &'static str },

    #[error("{name} is defined for {param} >= {min}, got {value}")]
    OutOfDomain { name: String, param: &'static str, value: i64, min: i64 },

    #[error("denominator constant term must be 1 or -1, got {0}")]
    BadDenominator(String),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("unknown check {0:?}")]
    UnknownCheck(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
