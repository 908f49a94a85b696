use thiserror::Error;

/// Errors raised by code construction, transformation and analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 65521]")]
    InvalidModulus(u32),

    #[error("entry {value} at row {row}, column {col} is not a residue mod {p}")]
    EntryOutOfRange { row: usize, col: usize, value: u64, p: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("stabilizer rows {0} and {1} do not commute")]
    NonCommutingRows(usize, usize),

    #[error("stabilizer rows are linearly dependent (row {0} lies in the span of the others)")]
    DependentRows(usize),

    #[error("extension row {ext} does not commute with stabilizer row {stab}")]
    ExtensionNotOrthogonal { ext: usize, stab: usize },

    #[error("extension row {0} lies in the stabilizer row space")]
    ExtensionInStabilizer(usize),

    #[error("stacked stabilizer and extension rows have rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("expected {expected} {what} rows, found {found}")]
    RowCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("index {index} is out of range for length {n}")]
    InvalidIndex { index: usize, n: usize },

    #[error("invalid index set: {0}")]
    InvalidIndices(String),

    #[error("(0|0) is not a valid puncturing pair")]
    ZeroPair,

    #[error("enumeration needs {required} vectors but the budget allows {allowed}")]
    BudgetExceeded { required: u128, allowed: u64 },

    #[error("minimum-weight word list is incomplete")]
    IncompleteWords,

    #[error("mother code distance {d} must exceed the puncture count {t}")]
    DistanceTooSmall { d: usize, t: usize },

    #[error("no hitting set of size at most {0}")]
    HittingSetNotFound(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
