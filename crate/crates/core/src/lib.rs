//! Exact arithmetic in GF(p^n), multiplicative subgroups and their cosets,
//! and verification of cap-set / Sidon-set / completeness properties, plus
//! the SET and EvenQuads card-code coset tables.
//!
//! A field is built once into an immutable [`FieldCtx`] with full log/antilog
//! tables; everything downstream (subgroup enumeration, cap checks, coset
//! union searches, card tables) is a pure function of that context and is
//! safe to share across threads.

pub mod caps;
pub mod cards;
pub mod cosetsearch;
pub mod ffield;
pub mod groups;

mod arith;
mod bitset;

pub use caps::{CapReport, CompletenessMethod, CompletenessReport};
pub use cards::{CardCode, CardTable};
pub use cosetsearch::{FamilyReport, PairPartition, ScanRow, UnionCandidate};
pub use ffield::{Element, FieldCtx, FieldSpec, Poly};
pub use groups::{CosetFamily, SubgroupHandle};
