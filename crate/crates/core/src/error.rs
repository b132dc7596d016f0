use thiserror::Error;

/// Errors raised by builders, deciders, and oracles.
///
/// Every variant names the offending datum so callers can report it without
/// re-deriving context.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication is not associative at ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("element {element} violates the identity law for claimed identity {identity}")]
    BadIdentity { identity: usize, element: usize },

    #[error("declared generators do not generate: element {element} is unreachable")]
    GeneratorsDoNotGenerate { element: usize },

    #[error("table entry at row {row}, column {col} is {value}, outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("generator '{letter}' maps to {value}, outside 0..{bound}")]
    OutOfRange {
        letter: String,
        value: usize,
        bound: usize,
    },

    #[error("generator letter '{letter}' is declared twice")]
    DuplicateLetter { letter: String },

    #[error("letter '{letter}' is not a generator of this monoid")]
    UnknownLetter { letter: String },

    #[error("generator map and source alphabet disagree at letter '{letter}'")]
    AlphabetMismatch { letter: String },

    #[error("base monoid mismatch: operand needs a carrier of order {left}, got {right}")]
    BaseMismatch { left: usize, right: usize },

    #[error("size limit exceeded: {kind} grew past cap {cap}")]
    SizeLimitExceeded { kind: &'static str, cap: usize },

    #[error("the empty set is not a valid {role}")]
    EmptySet { role: &'static str },

    #[error("set is not a member of the computed pointlike family")]
    NotAMember,

    #[error("set is not a submonoid: {reason}")]
    NotASubmonoid { reason: String },

    #[error("partition does not cover every element exactly once (element {element})")]
    NotAPartition { element: usize },

    #[error("partition is not a congruence: classes of {a} and {b} multiply inconsistently")]
    NotACongruence { a: usize, b: usize },

    #[error("edge {edge} endpoint {endpoint} is out of range for {vertices} vertices")]
    EdgeEndpointOutOfRange {
        edge: usize,
        endpoint: usize,
        vertices: usize,
    },

    #[error("label on {item} references element {element}, outside the carrier of order {order}")]
    LabelOverWrongMonoid {
        item: String,
        element: usize,
        order: usize,
    },

    #[error("order {order} exceeds the exhaustive-enumeration bound {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("malformed input: {detail}")]
    Malformed { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
