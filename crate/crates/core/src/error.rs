use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis is singular (determinant 0)")]
    SingularBasis,

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error(
        "placement {placement} references prototile {tile}, but only {count} prototiles exist"
    )]
    BadTileIndex {
        placement: usize,
        tile: usize,
        count: usize,
    },

    #[error("prototile does not contain the origin")]
    MissingOrigin,

    #[error("prototile contains duplicate cell {0:?}")]
    DuplicateCell(Vec<i64>),

    #[error("prototile list is empty")]
    NoPrototiles,

    #[error("placement list is not a tiling: {0}")]
    InvalidTiling(String),

    #[error("instance has {size} vertices, bound is {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("invalid letter {0:?} in boundary word")]
    BadLetter(char),

    #[error("window is empty or malformed")]
    BadWindow,

    #[error("bad configuration: {0}")]
    BadConfig(String),

    #[error("rendering supports only dimension 2, got {0}")]
    UnsupportedDimension(usize),

    #[error("geometric basis is degenerate")]
    DegenerateGeometry,

    #[error("malformed input: {0}")]
    Format(String),
}

pub(crate) fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow)
}
