//! Exhaustive search over integer tuples: the well-order on `Z^n` by
//! max-norm shell then lexicographic position, bounded system solving in
//! that order, checking of the finitized height conjecture, counterexample
//! search for the first-coordinate rigidity property, and a propagation
//! engine that closes rigid relation sets exactly.
//!
//! The shell scans are data-parallel. With the default `parallel` feature
//! they fan out over a rayon pool (`*_par`); without it the public entry
//! points fall back to the sequential implementations (`*_seq`), which are
//! always compiled and benchmarked against the parallel lane.

mod order;
mod prop4;
mod propagate;
mod psi;
mod solve;
mod verdict;

pub use order::{enumerate_leq_n, shell_tuples};
pub use prop4::check_property4;
pub use propagate::{determine, rigidity_by_propagation};
pub use psi::{check_psi, check_psi_in_domain, check_psi_seq, psi_domain, DEFAULT_Y_SHELL_CAP};
pub use solve::{solve_in_order, solve_in_order_seq};
pub use verdict::SearchVerdict;

#[cfg(feature = "parallel")]
pub use psi::check_psi_in_domain_par;
#[cfg(feature = "parallel")]
pub use psi::check_psi_par;
#[cfg(feature = "parallel")]
pub use solve::solve_in_order_par;
