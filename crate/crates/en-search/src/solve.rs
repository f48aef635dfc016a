use en_core::EnSystem;
#[cfg(feature = "parallel")]
use en_core::IntTuple;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::order::shell_tuples;
use crate::verdict::SearchVerdict;

#[cfg(feature = "parallel")]
const PAR_CHUNK: usize = 1 << 14;

/// Least solution of the system in the shell-lexicographic order with
/// max-norm up to `shell_cap`, or [`SearchVerdict::NoneUpToCap`].
pub fn solve_in_order(system: &EnSystem, shell_cap: u64) -> SearchVerdict {
    #[cfg(feature = "parallel")]
    {
        solve_in_order_par(system, shell_cap)
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve_in_order_seq(system, shell_cap)
    }
}

pub fn solve_in_order_seq(system: &EnSystem, shell_cap: u64) -> SearchVerdict {
    let n = system.n();
    let mut scanned: u64 = 0;
    for m in 0..=shell_cap {
        for tuple in shell_tuples(n, m) {
            scanned += 1;
            if system.check_solution(&tuple).expect("enumerated length") {
                return SearchVerdict::Found(tuple);
            }
        }
        log::debug!(target: "en_search", "solve: shell {m} exhausted, {scanned} tuples scanned");
    }
    SearchVerdict::NoneUpToCap { shell_cap }
}

/// Parallel lane: each shell is scanned in fixed-size chunks across the
/// rayon pool; `find_first` keeps the verdict identical to the sequential
/// one.
#[cfg(feature = "parallel")]
pub fn solve_in_order_par(system: &EnSystem, shell_cap: u64) -> SearchVerdict {
    let n = system.n();
    let mut scanned: u64 = 0;
    for m in 0..=shell_cap {
        let mut shell = shell_tuples(n, m);
        loop {
            let chunk: Vec<IntTuple> = shell.by_ref().take(PAR_CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            scanned += chunk.len() as u64;
            let found = chunk
                .into_par_iter()
                .with_min_len(2048)
                .find_first(|t| system.check_solution(t).expect("enumerated length"));
            if let Some(tuple) = found {
                return SearchVerdict::Found(tuple);
            }
        }
        log::debug!(target: "en_search", "solve: shell {m} exhausted, {scanned} tuples scanned");
    }
    SearchVerdict::NoneUpToCap { shell_cap }
}
