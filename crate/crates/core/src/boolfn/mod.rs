//! Truth tables, minors, canonical forms and class predicates.

mod anf;
pub mod builders;
mod minor;
mod predicate;
pub(crate) mod small;
mod table;

pub use anf::{anf, Anf};
pub use minor::{apply_minor, canonicalize, compose, diagonal, minors, reduce, MinorMap, MINOR_SEARCH_LIMIT};
pub use predicate::{b_depth, in_b, in_w, is_monotone, predicate, w_depth, ClassName, Depth, Endpoint, Family};
pub(crate) use table::small_mask;
pub use table::{decode, encode, TruthTable, MAX_ARITY};
