//! Exact-arithmetic models and checkers for Hom-Lie algebras, their
//! representations, and the two competing shapes of Hom-Lie algebroid over a
//! polynomial base, together with the twist-indexed differential calculus
//! that makes the two shapes comparable.

pub mod error;
pub mod kernel;
pub mod report;

pub mod algebroid;
pub mod calculus;
pub mod equivalence;
pub mod fixtures;
pub mod homlie;

pub use error::{Error, Result};
