use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not a partial order")]
    NotAPartialOrder,
    #[error("elements {0} and {1} lack a greatest lower bound or least upper bound")]
    NotALattice(usize, usize),
    #[error("element index {index} out of range for a lattice of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient lattice is not a chain")]
    NotAChain,
    #[error("relation is not a transfer system: {0}")]
    NotATransferSystem(String),
    #[error("R is not contained in R'")]
    NotAPremodelPair,
    #[error("transfer systems live on different lattices")]
    LatticeMismatch,
    #[error("no factorization of ({x}, {y})")]
    NoFactorization { x: usize, y: usize },
    #[error("blocks do not partition {{0..n}}")]
    NotAPartition,
    #[error("partition is crossing")]
    CrossingPartition,
    #[error("systems {0} and {1} have no least upper bound in the composition closed order")]
    NoLeastUpperBound(usize, usize),
    #[error("pair is not composition closed")]
    NotCompositionClosed,
    #[error("tree has a red branch above a non-red branch")]
    NotAModelTree,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    /// A structural invariant failed to hold; always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
