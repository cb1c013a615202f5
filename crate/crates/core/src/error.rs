use thiserror::Error;

/// Errors raised while building or checking the algebraic objects of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("empty multiplication table")]
    EmptyTable,
    #[error("group order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("not a Latin square: {line} {position} repeats entry {value}")]
    NotLatinSquare {
        line: &'static str,
        position: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} is not in the subgroup")]
    NotInSubgroup { element: usize },
    #[error("representation is missing a matrix for element {element}")]
    MissingMatrix { element: usize },
    #[error("matrix for element {element} has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadMatrixShape {
        element: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("matrix of the identity element is not the identity (residual {residual:.3e})")]
    BadIdentity { residual: f64 },
    #[error("matrix of element {element} is not unitary (residual {residual:.3e})")]
    NotUnitary { element: usize, residual: f64 },
    #[error("not a homomorphism at ({k1}, {k2}) (residual {residual:.3e})")]
    NotHomomorphism { k1: usize, k2: usize, residual: f64 },
    #[error("representation is not irreducible (character norm {index:.6})")]
    NotIrreducible { index: f64 },
    #[error("representations are equivalent but not identical; no fixed Schur target")]
    EquivalentRepresentations,
    #[error("representations are defined over different subgroups")]
    SubgroupMismatch,
    #[error("objects are defined over different groups")]
    GroupMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid exponent p = {0}; expected p >= 1")]
    InvalidP(f64),
    #[error("index ({i}, {j}) out of range for dimension {dim}")]
    CoefficientIndex { i: usize, j: usize, dim: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("catalog entry `{name}` does not fit this subgroup: {reason}")]
    CatalogMismatch { name: String, reason: String },
    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
