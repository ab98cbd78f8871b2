//! Exact computational kernel for rational polyhedral geometry.
//!
//! Everything in this crate is computed over `Q` or over real multi-quadratic
//! towers `Q(sqrt(d_1), ..., sqrt(d_m))`, with no floating point on any
//! decision path. The crate is organised around a handful of closely related
//! subjects:
//!
//! * [`scalar`] / [`vector`]: exact scalars `a_0 + sum a_j sqrt(d_j)`, exact
//!   vectors, sup-norms and rational affine subspaces;
//! * [`linalg`] / [`lp`]: dense rational linear algebra and an exact simplex;
//! * [`polyhedra`]: pointed rational cones and polytopes with dual
//!   descriptions, extremal rays, Minkowski sums and membership tests;
//! * [`monoid`]: finitely generated affine monoids, Hilbert bases,
//!   saturation, truncation and halfspace slicing;
//! * [`plfun`]: piecewise-linear functions on fans, concavity certificates,
//!   superadditive maps, straightening and PL detection;
//! * [`dioph`]: simultaneous Diophantine approximation of exactly
//!   represented points, and rational perturbation in rational affine
//!   subspaces;
//! * [`toric`]: complete toric models where section spaces are lattice-point
//!   sets of polytopes, with Fix/Mob decompositions, asymptotic orders of
//!   vanishing and multigraded section semigroups.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON formats and the CLI live in
//! the companion `polycone` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dioph;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod monoid;
pub mod plfun;
pub mod polyhedra;
pub mod sampling;
pub mod scalar;
pub mod toric;
pub mod vector;

pub use error::Error;
pub use scalar::{ExactScalar, Rational};
pub use vector::{AffineSubspace, ExactVector};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
