use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a weakly increasing vector, got {0:?}")]
    NotWeaklyIncreasing(Vec<i64>),
    #[error("entry {value} at position {position} is below the minimum {min}")]
    EntryTooSmall {
        position: usize,
        value: i64,
        min: i64,
    },
    #[error("empty input where at least one entry is required")]
    Empty,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("weight {weight} outside 0..={level}")]
    WeightOutOfRange { weight: u32, level: u32 },
    #[error("wedge truncation {0} unsupported (must be 1..=32)")]
    Truncation(u32),
    #[error("group element has determinant {0} instead of 1")]
    NotUnimodular(String),
    #[error("line bundle with weights {weights:?} does not exist on the type {composition:?}")]
    NoSuchBundle {
        weights: Vec<i64>,
        composition: Vec<u32>,
    },
    #[error("dimension cap of {cap} basis vectors exceeded")]
    ResourceLimit { cap: usize },
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
