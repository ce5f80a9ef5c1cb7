//! Supercharacter theories of small finite groups.
//!
//! The crate computes exact character tables, enumerates supercharacter
//! theories, and evaluates the vanishing-off subgroups `V(S|N)`, the
//! subgroups `U(S|N)`, Camina-type predicates and the S-central series,
//! cross-checking every structural identity among them with exact cyclotomic
//! arithmetic.

pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod set;
pub mod structure;
pub mod supertheory;
pub mod vanishing;
pub mod verifier;

pub use chartab::CharacterTable;
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::GroupTable;
pub use set::{ElementPartition, ElementSet, SubgroupSet};
pub use supertheory::{SuperCharacter, SuperTheory};
