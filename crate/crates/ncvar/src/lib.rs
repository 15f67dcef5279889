//! Nonclassicality of continuous-variable bosonic states as a metrological
//! resource.
//!
//! The crate computes, for states given either in a truncated Fock
//! representation or as Gaussian covariance data:
//!
//! - the quadrature QFI matrix and the metrological power `M` for
//!   displacement sensing, with the optimal sensing direction as a
//!   certificate ([`qfi`]),
//! - the mean-quadrature-variance nonclassicality measure `Q` for pure
//!   states and a certified convex-roof upper bound for mixed states
//!   ([`measures`]),
//! - closed-form Gaussian results through the Williamson decomposition,
//!   cross-checkable against the Fock pipeline ([`gaussian`]),
//! - the α-invested metrological power for phase estimation, sufficient
//!   displacement budgets, and Heisenberg-scaling sweeps ([`phase`]),
//! - Monte Carlo verification of the Cramér–Rao bound for homodyne
//!   displacement estimation on Gaussian states ([`estimation`]).
//!
//! Everything is deterministic given explicit seeds; randomized searches
//! report certified one-sided bounds (upper bounds for convex roofs, lower
//! bounds for maximizations) so downstream claims stay honest.
//!
//! Conventions: ħ = 1, `x = (a + a†)/√2`, vacuum quadrature variance 1/2,
//! covariance matrices use the anticommutator second moment without the 1/2
//! factor so that the vacuum covariance is the identity. A real squeezing
//! parameter `r > 0` squeezes the `x` quadrature.

pub mod error;
pub mod estimation;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod linopt;
pub mod measures;
pub mod optimize;
pub mod phase;
pub mod qfi;
pub mod sweeps;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{BuiltState, DensityMatrix, FockBasis, FockState, StateKind, StateSpec};
