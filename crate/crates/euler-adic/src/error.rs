use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex ({level},{column}): column must not exceed level")]
    InvalidVertex { level: u32, column: u32 },

    #[error("parallel index {index} out of range 1..={bundle} for the {turn} bundle out of ({level},{column})")]
    EdgeIndexOutOfRange {
        level: u32,
        column: u32,
        turn: &'static str,
        index: u32,
        bundle: u32,
    },

    #[error("edge does not continue the path: starts at ({found_level},{found_column}), path ends at ({level},{column})")]
    BrokenChain {
        level: u32,
        column: u32,
        found_level: u32,
        found_column: u32,
    },

    #[error("cannot parse cylinder: {0}")]
    ParseCylinder(String),

    #[error("cannot parse permutation: {0}")]
    ParsePermutation(String),

    #[error("sequence must be non-empty with pairwise distinct entries")]
    InvalidSequence,

    #[error("expected a permutation of 1..={0}")]
    NotStandardPermutation(usize),

    #[error("paths end at different vertices and are not comparable")]
    Incomparable,

    #[error("vertex ({level},{column}) admits {count} root paths, over the limit {limit}")]
    TooManyPaths {
        level: u32,
        column: u32,
        count: BigUint,
        limit: u64,
    },

    #[error("truncation depth {depth} is below the column parameter {column}")]
    DepthBelowColumn { depth: u32, column: u32 },

    #[error("no symbols remain after deleting 1..={small} from the permutation")]
    EmptyTail { small: u32 },

    #[error("ordered partition blocks must be non-empty with distinct entries")]
    InvalidPartition,

    #[error("dimension query needs a cylinder of length >= 1 and a target level >= the cylinder length")]
    InvalidDimQuery,

    #[error("ratio tables need cylinders of equal length (got {0} and {1})")]
    RatioLengthMismatch(usize, usize),

    #[error("the permutation oracle enumerates (n+1)! candidates and is capped at level {max}; got {got}")]
    OracleTooLarge { max: u32, got: u32 },

    #[error("weighting defines alpha_1..alpha_{have} but alpha_{want} is required")]
    AlphaDepth { have: usize, want: usize },

    #[error("alpha_{index} = {value} must satisfy 0 < {index}*alpha_{index} < 1")]
    AlphaOutOfRange { index: usize, value: String },

    #[error("outgoing weights at ({level},{column}) sum to {sum}, expected exactly 1")]
    WeightSum {
        level: u32,
        column: u32,
        sum: String,
    },

    #[error("edge weight must lie in [0,1], got {0}")]
    WeightOutOfRange(String),

    #[error("no weight recorded for edge {0} (weighting depth {1})")]
    MissingWeight(String, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
