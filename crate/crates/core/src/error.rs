use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate direction: vector has zero or non-finite length")]
    DegenerateDirection,

    #[error("direction collapses: vector is proportional to the all-ones vector")]
    DirectionCollapses,

    #[error("degenerate plane: spanning vectors are linearly dependent")]
    DegeneratePlane,

    #[error("direction must lie in the zero-sum hyperplane")]
    NotZeroSum,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} must be at least {min}, got {got}")]
    DimensionTooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },

    #[error("{what} capped at {max}, got {got}")]
    DimensionTooLarge {
        what: &'static str,
        max: usize,
        got: usize,
    },

    #[error("input vectors are not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("enumeration too large: 2^{n} sign vectors (limit 2^20)")]
    EnumerationTooLarge { n: usize },

    #[error("origin not interior")]
    OriginNotInterior,

    #[error("degenerate section: the plane meets the cross-polytope in a segment")]
    DegenerateSection,

    #[error("invalid L_p order {0}: need a finite p >= 1")]
    InvalidOrder(f64),

    #[error("F_2 is identically 1 on the sphere, no extremal problem")]
    NoExtremalProblem,

    #[error("x is not majorized by y")]
    NotMajorized,

    #[error("test function is not convex on the sample table")]
    NotConvex,

    #[error("value {0} outside the sample table range")]
    OutOfTableRange(f64),

    #[error("solver did not converge: {0}")]
    SolverFailure(String),

    #[error("unsupported body tag `{0}`")]
    UnsupportedBody(String),

    #[error("objective {objective} is incompatible with constraint {constraint}")]
    IncompatibleObjective {
        objective: &'static str,
        constraint: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
