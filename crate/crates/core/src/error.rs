use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("group closure exceeds the cap of {cap} elements")]
    EnumerationCap { cap: usize },
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("stability precondition violated: {0}")]
    Unstable(String),
    #[error("character table construction failed: {0}")]
    CharacterTable(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("function is not invariant: {0}")]
    NotInvariant(String),
    #[error("point not in G-set")]
    PointNotFound,
    #[error("equivariance violated: {0}")]
    NotEquivariant(String),
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("rank cap exceeded: rank {rank} > {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("data table error: {0}")]
    Data(String),
    #[error("checksum mismatch: expected {expected}, found {found}")]
    Checksum { expected: String, found: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
