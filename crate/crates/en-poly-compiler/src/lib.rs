//! Lowering of multivariate integer polynomial equations `D(x_1..x_p) = 0`
//! into equivalent systems over the unit/add/mul equation alphabet.
//!
//! Two modes are provided: a compact straight-line lowering that emits one
//! variable per distinct intermediate polynomial, and a literal mode that
//! materializes the full family of bounded-coefficient polynomials and
//! every identity among them. Both append the marker equation
//! `x_q + x_q = x_q`, which forces the distinguished coordinate to zero.

mod compile;
mod error;
mod parse;
mod poly;
mod squares;

pub use compile::{
    card_t, compile_compact, compile_full_t, compile_full_t_with_ceiling, CompiledSystem, Variant,
    DEFAULT_FULL_T_CEILING,
};
pub use error::PolyError;
pub use parse::parse_polynomial;
pub use poly::{Monomial, Polynomial};
pub use squares::{four_square, integerize_nonneg};

pub type Result<T> = std::result::Result<T, PolyError>;
