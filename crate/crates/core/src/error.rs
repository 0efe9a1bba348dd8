use thiserror::Error;

use crate::exact::QVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector where a nonzero one is required")]
    ZeroVector,
    #[error("vector {0} has non-integral entries")]
    NotIntegral(QVector),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("{count} generators exceed the configured cap {cap}")]
    GeneratorCap { count: usize, cap: usize },
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("cone is not strongly convex: it contains the line through {line}")]
    NotPointed { line: QVector },
    #[error("normal cones are not pointed: the polyhedron is not full-dimensional (normal line {line})")]
    NotPointedSupport { line: QVector },
    #[error("fans do not have the same support")]
    SupportMismatch,
    #[error("vector {0} is not in the cone")]
    NotInCone(QVector),
    #[error("cost vector has a negative entry")]
    NegativeCost,
    #[error("smooth refinement did not finish within {iterations} subdivisions")]
    RefinementBudget { iterations: usize },
    #[error("enumeration budget of {limit} nodes exceeded")]
    EnumerationBudget { limit: usize },
    #[error("no stabilizing exponent d <= {d_cap} for ray {ray}")]
    NoStableExponent { ray: QVector, d_cap: u64 },
    #[error("the zero ideal has no Newton polyhedron")]
    ZeroIdeal,
    #[error("weight {0} must be nonzero, nonnegative and integral")]
    InvalidWeight(QVector),
    #[error("invalid graded system: {0}")]
    InvalidSystem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
