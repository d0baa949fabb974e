//! Centralized numeric tolerances.
//!
//! Every threshold used by the library is defined here rather than inline,
//! so the precision contract of each operation is visible in one place.
//! All tolerances are relative unless stated otherwise; callers multiply by
//! the relevant component scale.

/// Causal classification of vectors: |g(v,v)| below `CLASS` times the squared
/// vector scale counts as null.
pub const CLASS: f64 = 1e-10;

/// General tensor-algebra comparisons (proportionality tests, structure
/// validation residuals, classification identities).
pub const ALG: f64 = 1e-9;

/// Comparisons expected to hold at accumulated machine precision
/// (metric-identity law, timelike sum rule, jump closed forms).
pub const EXACT: f64 = 1e-12;

/// Antisymmetry detection in `folded::detect_blocks`: a slot pair whose swap
/// residual exceeds `DETECT` times the component scale is treated as
/// non-antisymmetric.
pub const DETECT: f64 = 1e-9;

/// Dominant-property margins: evaluations above `-DP * scale` count as
/// members (boundary tensors sit exactly at zero).
pub const DP: f64 = 1e-12;

/// Degeneracy threshold for determinants, relative to the matrix scale
/// raised to the dimension.
pub const DEGENERATE: f64 = 1e-12;

/// Relative gap below which eigenvalues of a matrix pencil are clustered
/// into a single eigenspace.
pub const EIGEN_CLUSTER: f64 = 1e-7;

/// Residual (orthonormality and off-diagonal) accepted when an eigen-split
/// is used as an exact decision procedure; above this the code falls back
/// to sampling.
pub const EIGEN_RESIDUAL: f64 = 1e-10;

/// Cap on DP-verdict tuple evaluations per call.
pub const DP_SAMPLE_BUDGET: usize = 1_000_000;

/// Default number of null directions drawn per DP verdict.
pub const DP_DEFAULT_SAMPLES: usize = 512;

/// Per-step relative tolerance of the adaptive ODE integrator.
pub const ODE_STEP: f64 = 1e-10;

/// Global agreement expected between transported quantities and their
/// closed-form cross-checks, and between conserved integrals across cuts.
pub const ODE_GLOBAL: f64 = 1e-8;
