use thiserror::Error;

/// Errors raised by the lattice, ideal and fan computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank}, expected rank 2")]
    RankDeficient { rank: usize },

    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("Gale diagram spans fewer than two distinct rays")]
    DegenerateGale,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the unit ideal has no minimal primes")]
    NotProper,

    #[error("minimal primes do not form a chamber: {0}")]
    NotAChamber(String),

    #[error("standard monomial search exceeded radius {cap}")]
    CapExceeded { cap: i64 },

    #[error("monomial ideal is not weakly graded")]
    NotWeaklyGraded,

    #[error("weight vector projects outside the support of the Gale diagram")]
    WeightOutsideSupport,

    #[error("coherence witness failed: {0}")]
    WitnessFailed(String),

    #[error("expected exactly two flips, found {found}")]
    FlipCountViolation { found: usize },

    #[error("wall ideal is not an initial ideal: {0}")]
    WallNotCoherent(String),

    #[error("ideals do not differ by a flip: {0}")]
    InvalidPair(String),

    #[error("ideal is not an initial ideal of the lattice ideal")]
    NotInFan,

    #[error("flip targets disagree: {0}")]
    FlipTargetMismatch(String),

    #[error("enumeration has {count} Graver elements, limit is {limit}")]
    TooManyGraverElements { count: usize, limit: usize },

    #[error("integer overflow converting {0}")]
    Overflow(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
