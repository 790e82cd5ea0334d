use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined")]
    Underdetermined,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("form dimension must be at least 1")]
    EmptyForm,
    #[error("dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("unknown lattice {0:?}")]
    UnknownLattice(String),
    #[error("invalid parameter n={n} for lattice {name}")]
    InvalidParameter { name: String, n: usize },
    #[error("{0} is not a contact vector of the form")]
    NotContactVector(String),
    #[error("product <e,v> = {0} is not an integer")]
    NonIntegralLayer(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("inequality normals do not positively span the space; the cell is unbounded")]
    UnboundedCell,
    #[error("polytope has no inequalities")]
    Empty,
    #[error("dimension {dim} exceeds the vertex enumeration cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("hyperplane <{normal},x> = {support} cuts through the polytope")]
    NotSupporting { normal: String, support: String },
    #[error("{0} is not a facet normal of the cell")]
    NotFacetNormal(String),
    #[error("polytope is not a parallelotope")]
    NotParallelotope,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("segment weight must be positive")]
    NonPositiveWeight,
    #[error("facet normals do not span the space")]
    RankDeficient,
    #[error("no normal is orthogonal to the segment direction")]
    NoOrthogonalNormal,
    #[error("products with the normals do not take both signs")]
    MissingSign,
    #[error("direction {0} is not in the dual set of the facet normals")]
    NotInDualSet(String),
    #[error("the two polytopes are cut out by different normal sets")]
    NormalSetMismatch,
}
