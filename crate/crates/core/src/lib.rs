//! Graded derivation Lie algebras of free associative and free Lie algebras,
//! their symplectic variants, the spider/chord-diagram rewriting calculus and
//! exact weight-graded abelianization computations.

pub mod derivations;
pub mod diagrams;
pub mod error;
pub mod free_algebra;
pub mod homology;
pub mod ring;
pub mod suites;
pub mod symplectic;

pub use error::{Error, Result};
