//! Core data model for equation systems over the alphabet
//! `{ x_i = 1, x_i + x_j = x_k, x_i * x_j = x_k }`.
//!
//! Systems are canonical (commutative equations stored with `i <= j`,
//! duplicate-free) and all arithmetic is exact over arbitrary-precision
//! integers. The module also provides the semantic primitives the rest of
//! the workspace builds on: solution checking, relation extraction,
//! relation-morphism tests, the unit-elimination transform and tuple
//! padding.

mod equation;
mod error;
mod relations;
mod sci;
mod system;
mod tuple;

pub use equation::EnEquation;
pub use error::Error;
pub use relations::{is_relation_morphism, relations_of, RelationSet};
pub use sci::sci_notation;
pub use system::{zero_tuple, EnSystem};
pub use tuple::IntTuple;

/// Shorthand for results with the crate error type.
pub type Result<T> = std::result::Result<T, Error>;
