use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point set is empty")]
    EmptyPointSet,

    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("points {i1} and {i2} coincide; they do not define a direction")]
    DegenerateFrame { i1: usize, i2: usize },

    #[error("angular order is undefined for a point coinciding with the origin")]
    UndefinedOrder,

    #[error("opposite support lies on the base line; rectangle would have zero height")]
    DegenerateRectangle,

    #[error("support point {index} lies outside the slab spanned by the base and opposite sides")]
    InvalidSupports { index: usize },

    #[error("points {a}, {b} and {c} are collinear (general-position mode)")]
    CollinearInput { a: usize, b: usize, c: usize },

    #[error("need at least 2 points, got {n}")]
    TooFewPoints { n: usize },

    #[error("outlier budget t={t} must satisfy 0 <= t < n/2 (n={n})")]
    InvalidT { t: i64, n: usize },

    #[error("infeasible: n - t = {} < 3", *n as i64 - *t as i64)]
    Infeasible { n: usize, t: usize },

    #[error("oracle limited to n <= {limit}, got {n}")]
    SizeGuard { n: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid sampling parameters: {0}")]
    InvalidSampleParams(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
