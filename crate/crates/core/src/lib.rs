//! Exact computations in the derived category of `Z/n`.
//!
//! The crate decides null-homotopy of chain maps between bounded complexes
//! of free `Z/n`-modules, computes homology and Koszul objects, analyzes
//! `Z/n` for von Neumann regularity, and runs generating-hypothesis
//! experiments that either produce a certified counterexample (a map that is
//! zero on homology but not null-homotopic) or report consistency at the
//! tested scale.

pub mod complex;
pub mod doc;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod modulus;
pub mod ring;

pub use complex::{ChainComplex, ChainMap, Homotopy};
pub use error::{Error, Result};
pub use linalg::{InvariantFactors, MatZn};
pub use modulus::Modulus;
pub use ring::IdealZn;
