use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("unsupported coefficient ring: {0}")]
    UnsupportedRing(String),

    #[error("matrix shapes do not compose: {0}")]
    DimensionMismatch(String),

    #[error("boundary composition is nonzero at entry ({row}, {col})")]
    NonzeroComposition { row: usize, col: usize },

    #[error("not an exact triple: {0}")]
    NotExact(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error(
        "odd Maslov value {value} on subsystem generator {generator}: the quotient is not, \
         in general, a module over the Novikov ring; only classes of even Maslov index admit \
         coherent orientations"
    )]
    OddMaslovObstruction { generator: usize, value: i64 },

    #[error("inconsistent sign character: {0}")]
    InconsistentCharacter(String),

    #[error("value is not invertible in the coefficient ring: {0}")]
    NotInvertible(String),

    #[error("degree {degree} has infinitely many basis elements over the base ring")]
    InfiniteRank { degree: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("boundary does not preserve the filtration: {0}")]
    FiltrationViolation(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
