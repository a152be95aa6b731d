use thiserror::Error;

use crate::decoration::{BaseDecoration, ColourType};
use crate::geometry::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cell ({}, {}) is outside the level-{level} support", .cell.k, .cell.m)]
    OutsideSupport { level: u32, cell: Cell },

    #[error("point is outside the level-{level} support")]
    PointOutsideSupport { level: u32 },

    #[error("level {level} exceeds the enumeration cap {cap}")]
    LevelCap { level: u32, cap: u32 },

    #[error("address lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("cell ({}, {}) is not covered by the square", .0.k, .0.m)]
    NotCovered(Cell),

    #[error("no quadrant colouring satisfies the calibration anchors")]
    NoConsistentAssignment,

    #[error("{} quadrant colourings satisfy the calibration anchors", .0.len())]
    AmbiguousAssignment(Vec<BaseDecoration>),

    #[error("cell ({}, {}) of colour {colour} maps to two different blocks", .cell.k, .cell.m)]
    InconsistentBlock { cell: Cell, colour: ColourType },

    #[error("{0} block phases are consistent with the patch")]
    AmbiguousComposition(usize),

    #[error("no block phase is consistent with the patch")]
    NoComposition,

    #[error("no power up to {0} of the rule is positive")]
    NotPrimitive(u32),

    #[error("window inradius {inradius} is too small for bound {bound}")]
    WindowTooSmall { inradius: i64, bound: i64 },

    #[error("packing family {family} at level {level} disagrees with the tiling at ({}, {})", .cell.k, .cell.m)]
    MismatchAgainstA { level: u32, family: usize, cell: Cell },

    #[error("no repetitivity radius up to {0} suffices inside the window")]
    SearchExhausted(i64),

    #[error("visible region with {0} cells is not a prototile")]
    UnknownShape(usize),

    #[error("arrows around ({}, {}) are inconsistent", .0.k, .0.m)]
    InconsistentArrows(Cell),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
