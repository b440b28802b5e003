use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("point has {got} coordinates, polynomial has {want} variables")]
    ArityMismatch { got: usize, want: usize },
    #[error("column space of the right-hand side is not contained in that of the basis")]
    NoSolution,
    #[error("basis matrix has dependent columns (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("row index a is not unique for {mu} (candidates {candidates:?})")]
    NonUniqueA { mu: String, candidates: Vec<usize> },
    #[error("phi iteration did not stabilise for {0}")]
    NonTermination(String),
    #[error("specht basis rank check failed for {0}")]
    RankCheckFailed(String),
    #[error("alpha is the zero point")]
    ZeroPoint,
    #[error("no sample attained the entrywise maximal rank vector")]
    CertificationFailed,
    #[error("too many projective points: {0}")]
    TooManyPoints(u64),
    #[error("dimension slopes disagree across extension degrees: {0:?}")]
    InconsistentCounts(Vec<f64>),
    #[error("partition {0} is not a multiple-of-p block partition")]
    NotBlockMultiple(String),
    #[error("locus invariant violated: {0}")]
    InvariantViolated(String),
    #[error("cache error: {0}")]
    Cache(String),
}
