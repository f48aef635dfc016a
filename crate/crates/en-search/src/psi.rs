use en_core::{relations_of, IntTuple};
use num_bigint::BigInt;
use num_traits::Signed;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::order::shell_tuples;
use crate::propagate::propagate_relations;
use crate::verdict::SearchVerdict;

/// Default witness-search bound. Empirically every in-domain tuple for
/// n <= 2 admits a witness within shell 34; the default leaves an order of
/// magnitude of slack.
pub const DEFAULT_Y_SHELL_CAP: u64 = 256;

#[cfg(feature = "parallel")]
const X_CHUNK: usize = 512;

/// Domain of the finitized statement for dimension `n`: all tuples with
/// `2^(2^(n-1)) < |x_1| = max|x_i| <= 2^(2^n)`, in shell-lexicographic
/// order. `n <= 5` keeps the bounds within native range.
pub fn psi_domain(n: u32) -> impl Iterator<Item = IntTuple> {
    let (lo, hi) = domain_bounds(n);
    domain_tuples(n as usize, lo, hi)
}

fn domain_bounds(n: u32) -> (u64, u64) {
    assert!(
        (1..=5).contains(&n),
        "domain bounds overflow beyond n = 5 (and n >= 4 is impractical)"
    );
    let lo = 1u64 << (1u32 << (n - 1));
    let hi = 1u64 << (1u32 << n);
    (lo, hi)
}

/// Tuples with `lo < |x_1| = max|x_i| <= hi` in shell-lexicographic order:
/// within shell `m` the first coordinate is forced to `-m` or `m` and the
/// rest range over the whole box.
fn domain_tuples(n: usize, lo: u64, hi: u64) -> impl Iterator<Item = IntTuple> {
    (lo + 1..=hi).flat_map(move |m| {
        let m = i64::try_from(m).expect("shell fits i64");
        [-m, m].into_iter().flat_map(move |x1| {
            box_tuples(n - 1, m).map(move |rest| {
                let mut values = Vec::with_capacity(n);
                values.push(BigInt::from(x1));
                values.extend(rest.iter().map(|&c| BigInt::from(c)));
                IntTuple::new(values).expect("n >= 1")
            })
        })
    })
}

/// Plain lexicographic odometer over `[-m, m]^k`; yields one empty vector
/// for `k = 0`.
fn box_tuples(k: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut current: Option<Vec<i64>> = Some(vec![-m; k]);
    std::iter::from_fn(move || {
        let coords = current.take()?;
        let mut next = coords.clone();
        let mut advanced = false;
        for pos in (0..k).rev() {
            if next[pos] < m {
                next[pos] += 1;
                for c in next[pos + 1..].iter_mut() {
                    *c = -m;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            current = Some(next);
        }
        Some(coords)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum XOutcome {
    Witnessed,
    Refuted,
    Exhausted,
}

/// Search for a relation-preserving tuple with a coordinate exceeding
/// `|x_1|`. Shells above `|x_1|` are scanned up to the cap; on exhaustion
/// the relation set is propagated, which can still certify the witness or
/// refute its existence exactly.
fn check_x(x: &IntTuple, y_shell_cap: u64) -> XOutcome {
    let n = x.len();
    let rels = relations_of(x);
    let threshold = x.coord(1).abs();
    let start = u64::try_from(&threshold).expect("domain coordinate fits u64") + 1;
    for m in start..=y_shell_cap {
        for y in shell_tuples(n, m) {
            if rels.holds_in(&y, false) {
                return XOutcome::Witnessed;
            }
        }
    }
    match propagate_relations(n, &rels, false) {
        SearchVerdict::Determined(all) => {
            let larger_exists = all
                .iter()
                .any(|y| y.values().iter().any(|v| v.abs() > threshold));
            if larger_exists {
                XOutcome::Witnessed
            } else {
                XOutcome::Refuted
            }
        }
        _ => XOutcome::Exhausted,
    }
}

fn summarize<I>(outcomes: I, y_shell_cap: u64) -> SearchVerdict
where
    I: IntoIterator<Item = (IntTuple, XOutcome)>,
{
    let mut exhausted = false;
    for (x, outcome) in outcomes {
        match outcome {
            XOutcome::Witnessed => {}
            XOutcome::Refuted => return SearchVerdict::Counterexample(x),
            XOutcome::Exhausted => exhausted = true,
        }
    }
    if exhausted {
        SearchVerdict::UnknownCapExhausted {
            shell_cap: y_shell_cap,
        }
    } else {
        SearchVerdict::Holds
    }
}

/// Check the finitized statement for dimension `n` with the given witness
/// cap. Returns [`SearchVerdict::Holds`], an exact
/// [`SearchVerdict::Counterexample`], or
/// [`SearchVerdict::UnknownCapExhausted`] when some tuple stayed unsettled.
pub fn check_psi(n: u32, y_shell_cap: u64) -> SearchVerdict {
    let (lo, hi) = domain_bounds(n);
    check_psi_in_domain(n, lo, hi, y_shell_cap)
}

pub fn check_psi_seq(n: u32, y_shell_cap: u64) -> SearchVerdict {
    let (lo, hi) = domain_bounds(n);
    check_psi_in_domain_seq(n, lo, hi, y_shell_cap)
}

#[cfg(feature = "parallel")]
pub fn check_psi_par(n: u32, y_shell_cap: u64) -> SearchVerdict {
    let (lo, hi) = domain_bounds(n);
    check_psi_in_domain_par(n, lo, hi, y_shell_cap)
}

/// Domain-bound hook: check only tuples with `lo < |x_1| <= hi`. An empty
/// range holds vacuously.
pub fn check_psi_in_domain(n: u32, lo: u64, hi: u64, y_shell_cap: u64) -> SearchVerdict {
    #[cfg(feature = "parallel")]
    {
        check_psi_in_domain_par(n, lo, hi, y_shell_cap)
    }
    #[cfg(not(feature = "parallel"))]
    {
        check_psi_in_domain_seq(n, lo, hi, y_shell_cap)
    }
}

pub(crate) fn check_psi_in_domain_seq(n: u32, lo: u64, hi: u64, y_shell_cap: u64) -> SearchVerdict {
    let mut scanned: u64 = 0;
    let verdict = summarize(
        domain_tuples(n as usize, lo, hi).map(|x| {
            scanned += 1;
            if scanned.is_multiple_of(100_000) {
                log::info!(target: "en_search", "psi: {scanned} domain tuples checked");
            }
            let outcome = check_x(&x, y_shell_cap);
            (x, outcome)
        }),
        y_shell_cap,
    );
    log::info!(target: "en_search", "psi: domain exhausted after {scanned} tuples");
    verdict
}

/// Parallel lane: the domain streams through fixed-size chunks evaluated
/// across the rayon pool; chunk results are folded in order, so the first
/// counterexample in the well-order wins regardless of thread count.
#[cfg(feature = "parallel")]
pub fn check_psi_in_domain_par(n: u32, lo: u64, hi: u64, y_shell_cap: u64) -> SearchVerdict {
    let mut domain = domain_tuples(n as usize, lo, hi);
    let mut exhausted = false;
    let mut scanned: u64 = 0;
    loop {
        let chunk: Vec<IntTuple> = domain.by_ref().take(X_CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        scanned += chunk.len() as u64;
        let outcomes: Vec<(IntTuple, XOutcome)> = chunk
            .into_par_iter()
            .map(|x| {
                let outcome = check_x(&x, y_shell_cap);
                (x, outcome)
            })
            .collect();
        match summarize(outcomes, y_shell_cap) {
            SearchVerdict::Counterexample(x) => return SearchVerdict::Counterexample(x),
            SearchVerdict::UnknownCapExhausted { .. } => exhausted = true,
            _ => {}
        }
        log::info!(target: "en_search", "psi: {scanned} domain tuples checked");
    }
    if exhausted {
        SearchVerdict::UnknownCapExhausted {
            shell_cap: y_shell_cap,
        }
    } else {
        SearchVerdict::Holds
    }
}
