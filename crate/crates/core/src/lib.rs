//! Affine near-semirings `A^+(B_n)` over Brandt semigroups.
//!
//! The crate builds `A^+(B_n)` as the additive closure of the affine maps on
//! `B_n`, computes Green's relations of both semigroup reducts by brute force
//! and by closed characterizations, and checks the two against each other and
//! against closed-form counts.

pub mod brandt;
pub mod closure;
pub mod error;
pub mod formulas;
pub mod generators;
pub mod green;
pub mod map;
pub mod perm;
pub mod structure;

pub use brandt::BrandtElem;
pub use closure::{a_plus, additive_closure, FiniteSemigroup, NearSemiring, Reduct};
pub use error::{Error, Result};
pub use green::{green_brute, GreenStructure, Relation};
pub use map::{classify, render, CanonicalElem, FMap};
pub use perm::Perm;
