use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivideByZero,
    #[error("no root in GF(2^{k}); extend the field to GF(2^{})", 2 * *k as u32)]
    NeedsExtension { k: u8 },
    #[error("field degree limit exceeded: cannot build GF(2^{requested})")]
    DegreeLimit { requested: u32 },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: GF(2^{left}) vs GF(2^{right})")]
    FieldMismatch { left: u8, right: u8 },
    #[error("subspace is not a d-ideal")]
    NotDIdeal,
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("ideals live in different ambient algebras")]
    AmbientMismatch,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("minimal polynomial does not split over GF(2^{k}); extend the field")]
    NonSplit { k: u8 },
    #[error("expected defect 1, found {0}")]
    WrongDefect(usize),
    #[error("polynomial shapes do not match: P({0},{1}) vs P({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("quotient is not finite-dimensional at degree bound {0}")]
    NotClosedAtBound(usize),
    #[error("relations are not closed under d")]
    RelationsNotDClosed,
    #[error("generators do not generate the algebra: {0}")]
    NotGenerating(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degree {got} exceeds bound {bound}")]
    DegreeOverflow { got: usize, bound: usize },
    #[error("differential does not square to zero")]
    BadDifferential,
    #[error("axiom check failed: {0}")]
    AxiomFailure(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
