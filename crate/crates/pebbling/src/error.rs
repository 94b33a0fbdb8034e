use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid must have at least one axis")]
    EmptyGrid,
    #[error("axis {axis}: side length must be at least 1")]
    ZeroSide { axis: usize },
    #[error("axis {axis}: pebbling cost must be at least 2, got {cost}")]
    CostTooSmall { axis: usize, cost: u64 },
    #[error("grid has too many vertices to address")]
    GridTooLarge,
    #[error("vertex dimension {got} does not match grid dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {coord} on axis {axis} is outside 1..={side}")]
    OutOfBounds { axis: usize, coord: usize, side: usize },
    #[error("operation is only defined on grids with equal side lengths")]
    NonCubic,
    #[error("operation is only defined on one-dimensional grids")]
    NotAPath,
    #[error("{0}")]
    Domain(String),
    #[error("pinned vertices must be distinct")]
    DuplicatePin,
    #[error("pinned pebbles ({pinned}) exceed the total ({total})")]
    PinOverflow { pinned: u64, total: u64 },
    #[error("counts length {got} does not match vertex count {expected}")]
    CountsLength { expected: usize, got: usize },
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("pebble total overflows")]
    TotalOverflow,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
