//! Explicit finite groups, numerically certified character tables, normal
//! Cayley graph spectra, and brute-force checkers for growth and expansion
//! inequalities on normal subsets.

pub mod build;
pub mod chartable;
pub mod check;
pub mod classes;
pub mod distribution;
pub mod error;
pub mod field;
pub mod group;
pub mod growth;
pub mod perm;
pub mod spectral;
pub mod subset;
pub mod words;

pub use chartable::CharacterTable;
pub use check::{CheckRecord, GrowthReport, Status};
pub use classes::ClassTable;
pub use distribution::Distribution;
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use perm::Permutation;
pub use spectral::CayleySpec;
pub use subset::{NormalSubset, Subset};
