use thiserror::Error;

/// Errors raised by the geometric and combinatorial constructions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("all homogeneous coordinates are zero")]
    ZeroProjectivePoint,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {point:?} is not in the open simplex")]
    NotInOpenSimplex { point: Vec<f64> },

    #[error("invalid moment image {point:?}: coordinates must be nonnegative with sum at most 1")]
    InvalidMomentImage { point: Vec<f64> },

    #[error("fiber radii must be strictly positive, got {radii:?}")]
    NonPositiveRadius { radii: Vec<f64> },

    #[error("superpotential is singular: coordinate {index} is zero")]
    ZeroCoordinate { index: usize },

    #[error("point {point:?} is outside the open cell U^{offset:?}({level})")]
    OutsideCell {
        level: i64,
        offset: Vec<i64>,
        point: Vec<f64>,
    },

    #[error("normalized geodesic flow is undefined on the zero section")]
    ZeroCovector,

    #[error("invalid cell label U^{offset:?}({level}) for n = {n}")]
    InvalidCell { n: usize, level: i64, offset: Vec<i64> },

    #[error("invalid multi-index {b:?} for a morphism {from} -> {to}")]
    InvalidHomElement { from: i64, to: i64, b: Vec<i64> },

    #[error("cannot compose: target of first morphism is {first_target}, source of second is {second_source}")]
    NotComposable { first_target: i64, second_source: i64 },

    #[error("invalid monomial exponents {exponents:?} for a morphism {from} -> {to}")]
    InvalidMonomial { from: i64, to: i64, exponents: Vec<i64> },

    #[error("the cohomology oracle supports n in {{1, 2}}, got n = {0}")]
    OracleDimension(usize),

    #[error("shrink parameter {epsilon} must lie strictly between 0 and {bound}")]
    EpsilonOutOfRange { epsilon: String, bound: String },

    #[error("simplicial pair is malformed: {0}")]
    MalformedComplex(String),

    #[error("integer overflow during exact elimination")]
    Overflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
