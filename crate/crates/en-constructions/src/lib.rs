//! Generators for the named artifacts: the n-variable systems whose integer
//! solutions are all doubly-exponentially large, the two extremal tuple
//! families witnessing sharpness, and the assembly that pins the first
//! coordinate of every solution to `f(n)` for a represented function `f`.

mod extremal;
mod theorem1;
mod theorem2;

pub use extremal::{doubling_tuple, property4_tuple};
pub use theorem1::{theorem1_system, theorem1_witness};
pub use theorem2::{
    theorem2_chain_subsystem, theorem2_layout, theorem2_system, theorem2_witness, Theorem2Layout,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("n must be at least {min}, got {n}")]
    TooSmall { min: usize, n: usize },
    #[error("lift must be at least 1")]
    ZeroLift,
    #[error("witness does not satisfy the representation: {0}")]
    BadWitness(String),
    #[error(transparent)]
    Core(#[from] en_core::Error),
    #[error(transparent)]
    Pell(#[from] en_pell::PellError),
    #[error(transparent)]
    Poly(#[from] en_poly_compiler::PolyError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;
