use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("color {color} out of range for genus {genus}")]
    ColorOutOfRange { color: i64, genus: usize },
    #[error("genus {genus} too small: need g >= {required}")]
    GenusTooSmall { genus: usize, required: usize },
    #[error("no fresh color available at genus {genus}")]
    NoFreshColor { genus: usize },
    #[error("no admissible index l avoiding the monomial at rank {rank}")]
    NoAdmissibleIndex { rank: usize },
    #[error("not a standard-form diagram")]
    NotStandardForm,
    #[error("site shape not covered: {0}")]
    SiteShape(String),
    #[error("arc is not admissible: {0}")]
    BadArc(String),
    #[error("step budget exceeded: {0}")]
    Budget(String),
    #[error("range guard: {0}")]
    RangeGuard(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("oracle disagreement: {0}")]
    Disagreement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
