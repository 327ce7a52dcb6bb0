//! Exact arithmetic for symmetric quasi-values of cooperative games.
//!
//! A quasi-value is a linear, efficient allocation rule that gives null
//! players nothing; the Shapley value is the best-known example. For a
//! permutation group `G` on the player set, the quasi-values that commute
//! with `G` form an affine space. This crate computes that space exactly
//! over the rationals:
//!
//! * [`perm`] — permutations, cycle notation, fully enumerated groups;
//! * [`game`] — coalitions, characteristic functions, Harsanyi dividends;
//! * [`value`] — quasi-values as player × coalition coefficient matrices,
//!   with axiom and symmetry checkers;
//! * [`symspace`] — dimension of the space of `G`-symmetric quasi-values
//!   (by orbit counting and by cycle index) and an explicit affine
//!   parametrization around the Shapley value;
//! * [`marginal`] — marginal-vector operators and probabilistic mixtures
//!   of them (random-order values), including group averaging;
//! * [`classify`] — which groups admit a *unique* symmetric quasi-value,
//!   and the exotic transitive embedding of `S₅` into `S₆` that shows up
//!   in that classification;
//! * [`cli`] — the `quasivalue` command-line interface.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals
//! ([`Rat`]) by default, and the core types are generic over any
//! [`Scalar`] field representation.

pub mod classify;
pub mod cli;
pub mod game;
pub mod linalg;
pub mod marginal;
pub mod perm;
pub mod scalar;
pub mod symspace;
pub mod value;

pub use game::{Allocation, Coalition, Game};
pub use marginal::{MarginalDistribution, Selector};
pub use perm::{CycleIndex, CycleType, PermGroup, Permutation};
pub use scalar::{rat, Rat, Scalar};
pub use symspace::{OrbitStructure, Parametrization};
pub use value::ValueMatrix;

use thiserror::Error;

/// A diagnostic tied to a 1-indexed line of an input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LineError {
    pub line: usize,
    pub message: String,
}
