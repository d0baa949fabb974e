//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building frames, tensors, or running
/// the higher-level operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("metric is degenerate (|det g| = {0:.3e})")]
    DegenerateMetric(f64),
    #[error("metric signature is not (-,+,...,+): {neg} negative / {pos} positive eigenvalues")]
    WrongSignature { neg: usize, pos: usize },
    #[error("future axis is not timelike (g(u,u) = {0:.3e})")]
    NonTimelikeFutureAxis(f64),
    #[error("dimension {0} outside the supported range 2..=6")]
    DimensionOutOfRange(usize),
    #[error("rank {0} exceeds the cap of {1}")]
    RankTooLarge(usize, usize),
    #[error("component array has length {got}, expected {dim}^{rank} = {want}")]
    ComponentLength {
        got: usize,
        dim: usize,
        rank: usize,
        want: usize,
    },
    #[error("vector has {got} components, expected {want}")]
    VectorLength { got: usize, want: usize },
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("operands live in different frames")]
    FrameMismatch,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("tensor is zero; its block structure is ambiguous")]
    ZeroTensor,
    #[error("rank-0 tensor has no block structure")]
    RankZero,
    #[error("invalid block structure: {0}")]
    BadStructure(String),
    #[error("expected {expected} vectors, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands have different block structures")]
    StructureMismatch,
    #[error("degree-{0} block equals the dimension; unsupported inside an r >= 2 fold")]
    UnsupportedNBlock(usize),
    #[error("fold count {0} exceeds 4")]
    FoldTooLarge(usize),
    #[error("tensor is not totally antisymmetric")]
    NotAntisymmetric,
    #[error("tensor is not symmetric")]
    NotSymmetric,
    #[error("tensor is not in DP+ (dominant property fails)")]
    NotDominant,
    #[error("mixed form is not real-diagonalizable with a timelike eigenvector")]
    NotDiagonalizable,
    #[error("jacobian is singular (|det J| = {0:.3e})")]
    SingularJacobian(f64),
    #[error("pullback candidate is degenerate")]
    DegenerateCandidate,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown builtin example `{0}`")]
    UnknownExample(String),
    #[error("invalid generator record: {0}")]
    BadGeneratorRecord(String),
    #[error("initial jump density must be nonnegative")]
    NegativeInitial,
    #[error("cut t = {0} lies outside a generator's parameter range")]
    CutOutOfRange(f64),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("jump data violates its constraints: {0}")]
    ConstraintViolation(String),
    #[error("operation requires dimension 4, got {0}")]
    WrongDimension(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
