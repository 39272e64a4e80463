use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("degenerate Moebius map (ad - bc = 0)")]
    DegenerateMobius,

    #[error("lattice is degenerate (determinant 0)")]
    DegenerateLattice,

    #[error(
        "lattice is odd; the discriminant quadratic form is only defined mod 2Z for even lattices"
    )]
    OddLattice,

    #[error("unknown lattice name `{0}`")]
    UnknownName(String),

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("subgroup is not isotropic: q({element}) = {value}")]
    NotIsotropic { element: String, value: String },

    #[error("invalid finite quadratic module: {0}")]
    InvalidModule(String),

    #[error("module order {order} exceeds the search guard {guard}")]
    GuardExceeded { order: u64, guard: u64 },

    #[error("invalid curve configuration: {0}")]
    InvalidConfig(String),

    #[error("involution is not an isometry: entry ({0}, {1}) changes")]
    NotIsometry(String, String),

    #[error("cover data inconsistent: {0}")]
    InvalidCover(String),

    #[error("relation `{0}` is not 2-divisible in the lattice")]
    RelationNotDivisible(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("parse error: {0}")]
    Parse(String),
}
