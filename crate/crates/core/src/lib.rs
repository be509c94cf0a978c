//! Exact computations on varieties of Lie algebra laws.
//!
//! Lie algebras are given by structure constants over an exact field. The
//! crate computes the invariants that govern degenerations (characteristic
//! series, center, derivations, trivial and adjoint Chevalley-Eilenberg
//! cohomology, orbit dimension), verifies one-parameter-subgroup degeneration
//! certificates by exact limits over `Q(t)`, runs the standard battery of
//! non-degeneration criteria, and assembles Hasse diagrams.

pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod degeneration;
pub mod error;
pub mod field;
pub mod hasse;
pub mod liealg;
pub mod linalg;

pub use error::{ArithError, Error, ParseError, Result};
pub use field::{Field, Polynomial, QuadExt, Rational, RationalFunction};
pub use linalg::Matrix;
