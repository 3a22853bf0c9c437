//! Multivariate Newton/Lagrange polynomial interpolation on unisolvent nodes.
//!
//! The crate builds complete multi-index sets `A` with `l_p`-degree bounds,
//! generates grid-sub-sampled unisolvent node families from per-dimension
//! Chebyshev (or user-supplied) sequences, and interpolates in Newton form
//! with quadratic runtime and linear memory. On top of that sit the
//! triangular basis transforms (Newton/Lagrange/canonical), interpolation on
//! arbitrary given nodes, a rank-revealing dual decomposition for nodes on
//! algebraic varieties, Lebesgue and derivative-based error diagnostics, and
//! a benchmark harness for convergence studies.
//!
//! Entry points:
//! - [`multiindex::MultiIndexSet::complete`] builds `A = { alpha : ||alpha||_p <= n }`.
//! - [`nodes::UnisolventNodes::default_for`] places Leja-ordered Chebyshev grids.
//! - [`newton::divided_differences`] computes the interpolant's Newton coefficients.
//! - [`transform::TransformSet`] precomputes the NL/LN/CN/NC matrices.
//! - [`scattered::ScatteredSystem`] interpolates on arbitrary unisolvent nodes.
//! - [`dual::dual_decompose`] splits a polynomial space over degenerate nodes.
//! - [`approx`] estimates Lebesgue constants, error bounds, and convergence rates.

pub mod approx;
pub mod dual;
pub mod error;
pub mod io;
pub mod linalg;
pub mod multiindex;
pub mod newton;
pub mod nodes;
pub mod scattered;
pub mod transform;

pub use error::{Error, Result};
