//! A three-way dictionary between primitive indefinite binary quadratic
//! forms, hyperbolic elements of the modular group, and çarks — the annular
//! quotient graphs of the Farey tree, encoded as binary necklaces.
//!
//! The pieces:
//!
//! - [`psl2`] — exact projective matrices, generator words in block form,
//!   conjugacy normal forms and trace classification;
//! - [`bqf`] — forms, the modular action, Gauss reduction, cycles and the
//!   class-level symmetry predicates;
//! - [`pell`] — the Pell equation `X^2 - delta Y^2 = 4`, automorphism
//!   matrices, and both directions of the form/matrix dictionary;
//! - [`cark`] — necklaces and bracelets, run-length weights, symmetry
//!   operators, reduced edges, and DOT/JSON export;
//! - [`combinatorics`] — necklace/bracelet/Lyndon counting and Duval
//!   enumeration;
//! - [`invariants`] — spine length, trace, hyperbolic length, annulus
//!   modulus and Markoff values;
//! - [`class_group`] — per-discriminant enumeration, cycle partitions,
//!   class numbers and trace listings.
//!
//! All arithmetic underneath the dictionary is exact (arbitrary-precision
//! integers); floating point is confined to [`invariants`]. Values are
//! immutable and every operation is a pure function, so everything here is
//! safe to share across threads.

pub mod bqf;
pub mod cark;
pub mod class_group;
pub mod combinatorics;
pub mod error;
pub mod invariants;
pub mod pell;
pub mod psl2;
mod rotation;

pub use bqf::{Cycle, Form};
pub use cark::{Bracelet, CarkDocument, Necklace, WeightedCark};
pub use class_group::{DiscriminantReport, TraceEntry};
pub use error::{Error, Result};
pub use invariants::CarkInvariants;
pub use pell::PellSolution;
pub use psl2::{BlockWord, ElementClass, ProjMat};
