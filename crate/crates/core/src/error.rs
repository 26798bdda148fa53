use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be nonzero")]
    Zero,

    #[error("{0} is not a negative discriminant (need d < 0, d = 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),

    #[error("-{0} is not a fundamental discriminant")]
    NotFundamental(u64),

    #[error("D = {d} violates the Kronecker condition at {prime}")]
    KroneckerCondition { d: u64, prime: u64 },

    #[error("invalid level configuration: {0}")]
    InvalidLevel(String),

    #[error("no algebra with ramified set {ramified:?} found with |a|+|b| <= {bound}")]
    SearchExhausted { ramified: Vec<u64>, bound: i64 },

    #[error("could not saturate order at prime {0}")]
    SaturationFailed(u64),

    #[error("no splitting of the order found modulo {0}")]
    SplittingNotFound(u64),

    #[error("ideal class enumeration overshot the mass: reached {reached}, expected {expected}")]
    MassOvershoot { reached: String, expected: String },

    #[error("optimal embedding count for d = {d} at class {class} is not an integer")]
    NonIntegralEmbeddingCount { class: usize, d: i64 },

    #[error("elements belong to different quaternion algebras")]
    MixedAlgebras,

    #[error("lattice is not integral or not positive definite: {0}")]
    BadLattice(String),

    #[error("no one-dimensional rational cusp eigenspace; unsplit rational eigenspace dimensions {dims:?}")]
    NoRationalSplitting { dims: Vec<usize> },

    #[error("congruence precondition failed: {0}")]
    CongruencePrecondition(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
