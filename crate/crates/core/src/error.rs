use braidrack_exact::ExactError;
use thiserror::Error;

/// Element indices in messages are 1-based, matching the table format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RackError {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("entry {value} in row {row} is outside 1..{size}")]
    EntryOutOfRange { row: usize, value: usize, size: usize },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("self-distributivity fails at ({0}, {1}, {2})")]
    SelfDistributivityFails(usize, usize, usize),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("Aff({q}, {alpha}) is not a rack: {reason}")]
    AffineNotARack { q: String, alpha: String, reason: String },
    #[error("element is not in the group generated by the given permutations")]
    ElementNotInGroup,
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("invalid permutation {0:?}")]
    BadPermutation(String),
    #[error("invalid rack file: {0}")]
    BadFile(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("orbit exceeds the cap of {0} tuples")]
    OrbitSizeCap(usize),
    #[error("strand index {index} out of range for arity {arity}")]
    BadStrand { index: usize, arity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PercolateError {
    #[error("quarantine closure needs a nonempty seed")]
    EmptySeed,
    #[error("orbit has {0} tuples; minimal plague search supports at most 24")]
    OrbitTooLarge(usize),
    #[error("orbits of size {size} have different minimal plague sizes {a} and {b}")]
    ImmunityMismatch { size: usize, a: usize, b: usize },
    #[error("minimal plagues are defined for arity 3 only (got {0})")]
    WrongArity(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error("cocycle entries must be nonzero")]
    ZeroScalar,
    #[error("cocycle condition fails at ({0}, {1}, {2})")]
    CocycleConditionFails(usize, usize, usize),
    #[error("character is inconsistent: {0}")]
    CharacterInconsistent(String),
    #[error("{0} does not centralize the base element")]
    NotInCentralizer(String),
    #[error("cocycle table has wrong shape")]
    Shape,
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NicholsError {
    #[error("degree {degree} needs a block of {size} words, above the cap {cap}")]
    DegreeCap { degree: usize, size: usize, cap: usize },
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("invalid relation: {0}")]
    BadRelation(String),
    #[error("no word-sized arithmetic for {0}")]
    NoImage(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("size_max {0} exceeds the hard cap {1}")]
    SizeCapExceeded(usize, usize),
}
