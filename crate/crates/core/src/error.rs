use crate::word::BitWord;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid character at position {position}, expected '0' or '1'")]
    Parse { position: usize },
    #[error("{0} is not a Dyck word")]
    NotDyck(BitWord),
    #[error("expected a non-empty Dyck word")]
    EmptyDyck,
    #[error("{0} is not pullable")]
    NotPullable(BitWord),
    #[error("{word} has length {len}, expected {expected}")]
    Length {
        word: BitWord,
        len: usize,
        expected: usize,
    },
    #[error("{word} has weight {weight}, not in the middle levels {n} and {n}+1")]
    Level {
        word: BitWord,
        weight: usize,
        n: usize,
    },
    #[error("invalid triple: shift {shift} out of range 0..={max}")]
    Shift { shift: usize, max: usize },
    #[error("internal error: {word} matched {matches} rotations while decoding")]
    Decode { word: BitWord, matches: usize },
    #[error("n must be at least 1")]
    ZeroN,
    #[error("2·C({dim},{n}) overflows a 64-bit count", dim = 2 * n + 1)]
    Overflow { n: usize },
    #[error("{prev} is not a neighbor of {at} on the Hamilton cycle")]
    NotAdjacent { prev: BitWord, at: BitWord },
    #[error("invalid gluing plan: {0}")]
    Plan(PlanError),
    #[error("n = {n} is outside the supported range {min}..={max}")]
    Range { n: usize, min: usize, max: usize },
}

/// Reasons a set of gluing words does not form a valid plan.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("{0} is not a pullable Dyck word of the right length")]
    NotPullable(BitWord),
    #[error("{0} is listed twice")]
    Duplicate(BitWord),
    #[error("footprints of {0} and {1} overlap")]
    Overlap(BitWord, BitWord),
    #[error("gluing at {0} joins a cycle to itself")]
    Redundant(BitWord),
    #[error("expected {expected} gluings, found {found}")]
    Count { expected: usize, found: usize },
}

impl From<PlanError> for Error {
    fn from(e: PlanError) -> Self {
        Error::Plan(e)
    }
}
