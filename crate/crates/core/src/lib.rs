//! Convex geometry toolkit for general probabilistic theories.

pub mod bodies;
pub mod catalog;
pub mod determinism;
pub mod geometry;
pub mod gpm;
pub mod gpt;
pub mod io;
pub mod quantum;
pub mod scalar;

pub use scalar::{q, QSqrt2, Rational, Scalar};

/// Exact rational coordinate vector.
pub type RVector = geometry::Vector<Rational>;
/// Exact rational polytope.
pub type Polytope = geometry::Polytope<Rational>;
/// Exact polytope over Q(√2).
pub type Sqrt2Polytope = geometry::Polytope<QSqrt2>;
/// Floating-point polytope.
pub type FloatPolytope = geometry::Polytope<f64>;
