//! Exact arithmetic substrate: rational scalars, multivariate polynomials,
//! the base algebra with its substitution involution, twisted derivations,
//! and small rational matrices.

pub mod base;
pub mod derivation;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use base::BaseGeometry;
pub use derivation::TwistedDerivation;
pub use linalg::QMatrix;
pub use poly::{Monomial, Poly, Vars};
pub use rational::{rat, rat_int, Rational};
