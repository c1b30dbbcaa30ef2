//! Decide whether irreducible homogeneous vector bundles on rational
//! homogeneous spaces `G/P` of classical type are Ulrich with respect to the
//! minimal ample class.
//!
//! The associated datum of a highest weight is computed two ways (root by
//! root, and through the closed-form matrix families for types B, C, D) and
//! the Ulrich property is decided from it. A Borel–Weil–Bott oracle checks the
//! cohomological definition independently, and a bounded exhaustive search
//! certifies the absence of Ulrich weights case by case.

pub mod bott;
pub mod cli;
pub mod datum;
pub mod error;
pub mod parse;
pub mod report;
pub mod rootsys;
pub mod search;
pub mod ulrich;

pub use error::{Error, Result};
pub use rootsys::{Family, LieType, ParabolicSet, Root, RootSystem, Weight};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::Ratio<i64>;
