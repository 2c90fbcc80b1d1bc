//! Composition-closed equational classes of Boolean functions.
//!
//! Functions are explicit truth tables ([`TruthTable`]). On top of them the
//! crate provides exact membership tests for the named classes of the Post
//! lattice and its projection-free extension, bounded-arity closure
//! operators over [`FunctionClass`] values, relational constraints, and the
//! named-class catalog with interval exploration.
//!
//! Bit convention: the assignment `(a_1, ..., a_n)` lives at table index
//! `a_1 + 2 a_2 + ... + 2^(n-1) a_n`, so `x1` is the least significant bit.

pub mod boolfn;
pub mod catalog;
pub mod classes;
pub mod constraints;
mod engine;
mod error;
pub mod formula;
pub mod verify;

pub use boolfn::{Anf, MinorMap, TruthTable};
pub use catalog::{ClassExpr, CloneSignature, Skeleton};
pub use classes::FunctionClass;
pub use constraints::{Constraint, Relation, TupleMatrix};
pub use error::{Error, Result};
pub use formula::Expr;

/// Default enumeration cap for P-matrix enumeration.
pub const DEFAULT_MAX_MATRICES: u64 = 100_000_000;
