//! Causal tensors and superenergy tensors on N-dimensional Lorentzian
//! vector spaces.
//!
//! The crate works pointwise on a tangent-space model: an N-dimensional real
//! vector space carrying a metric of signature (−,+,…,+). On top of the dense
//! tensor arithmetic in [`frame`] and [`tensor`] it provides
//!
//! * [`folded`] — r-fold form machinery (block detection, interior
//!   contractions, the 2^r Hodge duals, the ⊙ product) and the basic
//!   superenergy tensor built from them,
//! * [`cones`] — membership tests for the causal-tensor cones DP⁺/DP⁻ and the
//!   constructive simple-form decomposition of rank-2 causal tensors,
//! * [`rainich`] — algebraic classification of symmetric rank-2 tensors as
//!   energy-momentum tensors (p-form squares, Maxwell, massless scalar,
//!   perfect fluid, dust),
//! * [`maps`] — pointwise proper-causal-relation checks between metrics and
//!   generalized (monoid) symmetry tests,
//! * [`wavefront`] — transport of field discontinuities along
//!   null-hypersurface generators and the associated conserved cut
//!   integrals,
//! * [`selftest`] — the executable acceptance suite shared by
//!   `tests/acceptance.rs` and the CLI `selftest` subcommand.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is `Send + Sync` and safe to share across
//! threads.

pub mod cones;
pub mod error;
pub mod folded;
pub mod frame;
pub mod maps;
mod ode;
pub mod rainich;
pub mod selftest;
pub mod tensor;
pub mod tol;
pub mod wavefront;

pub use error::{Error, Result};
pub use frame::{CausalClass, CausalKind, Frame, LorentzFrame, TimeOrientation};
pub use tensor::Tensor;
