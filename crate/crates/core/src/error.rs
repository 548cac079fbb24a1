use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point must have at least one coordinate")]
    EmptyPoint,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("{what} must be positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(&'static str),
    #[error("regular polygon needs k >= {min}, got {k}")]
    InvalidK { k: u32, min: u32 },
    #[error("zero-length leg in angle computation")]
    ZeroLengthLeg,
    #[error("objects are coincident copies")]
    CoincidentCopies,
    #[error("objects are not translates of one another")]
    NotTranslates,
    #[error("width {width} outside the allowed range [{min}, {max}]")]
    OutOfRange { width: f64, min: f64, max: f64 },
    #[error("cube width {width} does not match the grid spacing {spacing}")]
    WidthMismatch { width: f64, spacing: f64 },
    #[error("cube holds {count} lattice points, expected between {min} and {max}")]
    LatticeWindow {
        count: usize,
        min: usize,
        max: usize,
    },
    #[error("no lattice point inside the object")]
    EmptyLatticeSet,
    #[error("{0} is not an integral power of 4 (>= 4)")]
    NotPowerOfFour(u64),
    #[error("node is a leaf of the adversary tree")]
    LeafNode,
    #[error("object {0} is not hit by any candidate")]
    Infeasible(usize),
    #[error("duplicate point in the point set at index {0}")]
    DuplicatePoint(usize),
    #[error("fat object does not contain its rounded center {point:?}")]
    InconsistentFatObject { point: Vec<f64> },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
