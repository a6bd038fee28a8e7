//! Union-intersecting families of k-sets and K_{s,t}-free subgraphs of
//! Kneser graphs: representations, named constructions, exact size bounds,
//! and exhaustive or branch-and-bound verification at desk scale.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod iso;
pub mod kneser;
pub mod random;
pub mod search;
pub mod setfam;
pub mod structure;

pub use error::{Error, Result};
pub use iso::{canonical_family, canonical_form, is_isomorphic, CanonicalForm};
pub use setfam::{Family, FamilyRecord, KSet, Permutation};
