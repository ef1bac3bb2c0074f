//! Symbolic verification kernel for the null-plane quantum Poincaré algebra.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, the
//! deformation parameter lives in truncated formal power series, and
//! noncommutative polynomials are kept in PBW normal form against a bracket
//! table. On top of that sit the deformed presentations of the algebra, the
//! nonlinear change of basis between them, the bicrossproduct
//! action/coaction pair with its constructive reconstruction, the deformed
//! Casimirs, and the universal R-matrix with its Yang–Baxter and
//! triangularity checks. Every identity is decided by canonical-form
//! equality; there are no tolerances.

pub mod algfile;
pub mod bicross;
pub mod hopfdef;
pub mod models;
pub mod ncpoly;
pub mod scalars;
pub mod tensorspace;

pub use hopfdef::{CheckReport, HopfContext, HopfPresentation, Witness};
pub use ncpoly::{Algebra, AlgebraError, AlgebraMorphism, Alphabet, Context, Element, Mono};
pub use scalars::{Rational, ZSeries};
pub use tensorspace::TensorElement;
