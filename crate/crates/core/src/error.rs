use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dims vector is empty")]
    EmptyDims,
    #[error("side length 0 in dims {0:?}")]
    ZeroSide(Vec<usize>),
    #[error("{d} dimensions exceed the maximum of {max}")]
    TooManyDims { d: usize, max: usize },
    #[error("{cells} cells exceed the {max}-cell limit")]
    TooManyCells { cells: u128, max: u64 },
    #[error("coordinate {coord:?} has {got} components, expected {expected}")]
    CoordLength { coord: Vec<usize>, got: usize, expected: usize },
    #[error("coordinate {coord:?} out of range for dims {dims:?}")]
    CoordOutOfRange { coord: Vec<usize>, dims: Vec<usize> },
    #[error("duplicate coordinate {0:?}")]
    DuplicateCoord(Vec<usize>),
    #[error("dimension index {index} out of range 1..={d}")]
    DimIndex { index: usize, d: usize },
    #[error("dimension indices must differ, got {0} twice")]
    EqualDims(usize),
    #[error("cannot project a 1-dimensional tensor")]
    ProjectFromOneDim,
    #[error("invalid section spec: {0}")]
    BadSection(String),
    #[error("orthogonality order k must be >= 1, got 0")]
    BadOrthogonalityOrder,
    #[error("dimensionality mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("cell {0:?} is a 0-entry")]
    CellIsZero(Vec<usize>),
    #[error("family is empty")]
    EmptyFamily,
    #[error("family mixes dimensionalities {0} and {1}")]
    MixedFamily(usize, usize),
    #[error("duplicate pattern at family index {0}")]
    DuplicatePattern(usize),
    #[error("pattern has no 1-entries")]
    EmptyPattern,
    #[error("entry {coord:?} is not a bottom entry along dimension {dim}")]
    NotBottomEntry { coord: Vec<usize>, dim: usize },
    #[error("entry {coord:?} is not a top entry along dimension {dim}")]
    NotTopEntry { coord: Vec<usize>, dim: usize },
    #[error("pattern must have exactly one 1-entry, found {0}")]
    NotSingleOne(u64),
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("n = {n} too small: {why}")]
    NTooSmall { n: usize, why: String },
    #[error("enumeration guard exceeded: {0}")]
    EnumerationGuard(String),
    #[error("dimension {0} has no empty layer")]
    NoEmptyLayer(usize),
    #[error("seed matrix already contains family member {0}")]
    SeedContains(usize),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange { what, detail: detail.into() }
    }
}
