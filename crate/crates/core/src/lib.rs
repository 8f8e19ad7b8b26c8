//! Exact character theory of finite p-groups: character tables, Galois
//! classes of irreducibles with their rationality invariants, genotypes via
//! genetic reduction, and the Burnside ring unit machinery.

pub mod analysis;
pub mod arith;
pub mod burnside;
pub mod char_table;
pub mod genotype;
pub mod group;
pub mod linalg;
pub mod cyclotomic;
pub mod rational;
pub mod rationality;

pub use cyclotomic::{CycNum, FieldHandle};
pub use rational::Rational;
