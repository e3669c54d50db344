//! Finite semigroups, their congruence lattices, and term-condition
//! commutators of congruences.
//!
//! Tables are row-major over elements `0..n`. Congruences are stored by
//! least class representative. Commutators are computed from the algebra
//! `M(α₁, …, αₙ)` of `2^(n-1) × 2` matrices generated by the pairs of the
//! arguments, and the structural classifier cross-checks them through the
//! kernel and its maximal subgroup.

pub mod commutator;
pub mod congruence;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod semigroup;
pub mod structure;
pub mod words;

pub use commutator::{
    classify_definitional, series, supernilpotent_chain, tc_commutator, Class, ClassReport, Commutators, Limits,
    Method, SeriesKind,
};
pub use congruence::{cg, join, meet, Congruence, Partition};
pub use error::{Error, Result};
pub use semigroup::{Element, Semigroup};
pub use structure::{classify_structural, kernel, rees_decompose, KernelDecomposition};
