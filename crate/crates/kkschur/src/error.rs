use crate::partition::{Cell, Partition};
use thiserror::Error;

/// Errors raised by the combinatorial and ring operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition {lambda} is not {k}-bounded")]
    NotKBounded { lambda: Partition, k: u32 },

    #[error("{shape} is not a {level}-core (a cell has hook length {level})")]
    NotACore { shape: Partition, level: u32 },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("cell ({row},{col}) lies outside {shape}", row = cell.row, col = cell.col)]
    CellOutsideShape { cell: Cell, shape: Partition },

    #[error("rectangle width {t} out of range 1..={k}")]
    OutOfRange { t: u32, k: u32 },

    #[error("Pieri rank {r} out of range 0..={k}")]
    RankOutOfRange { r: u32, k: u32 },

    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: Partition, outer: Partition },

    #[error("not divisible: residual term {coeff}*[{index}] cannot be matched")]
    NotDivisible { index: Partition, coeff: String },

    #[error("sequence violates beta_i >= beta_(i+1) >= beta_i - 1 at position {0}")]
    BadBetaSequence(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("base {base} does not fit inside the rectangle of width {width}")]
    BaseNotInRectangle { base: Partition, width: u32 },

    #[error("unknown statement id: {0}")]
    UnknownStatement(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
