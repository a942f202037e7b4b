//! Exact-arithmetic toolkit for knot concordance obstructions.
//!
//! The crate computes, over exact rationals only: weighted spanning-tree
//! determinants of Goeritz-style graphs (matrix-tree, deletion-contraction,
//! Gershgorin/inertia certificates), Alexander and Conway polynomials of
//! 3-braid closures via the reduced Burau representation, Fox-Milnor
//! squareness tests and related sliceness obstructions, and Milnor
//! invariants of string links through truncated Magnus expansions.
//! Floating point appears in exactly one place (root isolation for the
//! Alexander polynomials of the Turk's-head family); everything else is
//! `BigRational` arithmetic.

#![forbid(unsafe_code)]

pub mod braid;
pub mod graph;
pub mod laurent;
pub mod magnus;
pub mod matrix;
pub mod obstructions;
pub mod rational_function;
pub mod scalar;
pub mod turks;

pub use braid::{BraidError, BraidWord};
pub use graph::{GraphError, WeightedGraph};
pub use laurent::{LaurentPolynomial, PolyError, Var};
pub use magnus::{FreeWord, MagnusError, MagnusSeries};
pub use matrix::{Dominance, GershgorinDisk, Inertia, MatrixError, SymmetricMatrix};
pub use obstructions::ObstructionError;
pub use rational_function::RationalFunction;
pub use scalar::{GaussianRational, Int, Rational};
pub use turks::{TurksError, TurksHeadIndex};

pub use num_complex::Complex64;
