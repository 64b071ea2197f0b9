use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("label `{0}` is not in the ground set")]
    LabelNotPresent(String),
    #[error("label `{0}` appears in both operands")]
    LabelClash(String),
    #[error("not a tubing: {0}")]
    NotATubing(String),
    #[error("graph is not a single connected component")]
    NotConnected,
    #[error("invalid length multiset: {0}")]
    InvalidMultiset(String),
    #[error("host is not a single path")]
    NotAPath,
    #[error("host is not a single cycle")]
    NotACycle,
    #[error("blocks do not partition the host vertex set")]
    NotAPartition,
    #[error("partition is crossing")]
    Crossing,
    #[error("zero block must be nonempty")]
    EmptyZeroBlock,
    #[error("second argument is not the adjacent closure of the first")]
    NotAClosure,
    #[error("polytope host is not a single cycle")]
    HostNotCycle,
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("component size {0} exceeds what order {1} stores")]
    OrderExceeded(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
