//! Oracle checks for the search machinery: bounded solving against plain
//! filtered enumeration, propagation against brute-force morphism scans,
//! and the two extremal tuple families.

use std::collections::BTreeSet;

use en_constructions::{doubling_tuple, property4_tuple};
use en_core::{is_relation_morphism, EnEquation, EnSystem, IntTuple};
use en_search::{
    check_property4, enumerate_leq_n, rigidity_by_propagation, shell_tuples, solve_in_order,
    SearchVerdict,
};
use proptest::prelude::*;

fn arb_small_system() -> impl Strategy<Value = EnSystem> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((0usize..3, 1..=n, 1..=n, 1..=n), 0..5).prop_map(move |eqs| {
            EnSystem::from_equations(
                n,
                eqs.into_iter().map(|(kind, i, j, k)| match kind {
                    0 => EnEquation::unit(i),
                    1 => EnEquation::add(i, j, k),
                    _ => EnEquation::mul(i, j, k),
                }),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// solve_in_order is exactly "filter the well-order through the
    /// solution predicate".
    #[test]
    fn solve_agrees_with_filtered_enumeration(sys in arb_small_system(), cap in 0u64..=3) {
        let expected = enumerate_leq_n(sys.n())
            .take_while(|t| {
                t.values().iter().all(|v| v.magnitude() <= &(cap).into())
            })
            .find(|t| sys.check_solution(t).unwrap());
        let verdict = solve_in_order(&sys, cap);
        match expected {
            Some(t) => prop_assert_eq!(verdict, SearchVerdict::Found(t)),
            None => prop_assert_eq!(verdict, SearchVerdict::NoneUpToCap { shell_cap: cap }),
        }
    }
}

#[test]
fn doubling_family_determines_two_tuples() {
    for n in 2..=16 {
        let x = doubling_tuple(n).unwrap();
        let verdict = rigidity_by_propagation(&x, false);
        let SearchVerdict::Determined(set) = verdict else {
            panic!("propagation must close for the doubling tuple, n = {n}");
        };
        let zero = en_core::zero_tuple(n);
        let expected: BTreeSet<IntTuple> = [zero, x].into_iter().collect();
        assert_eq!(set, expected, "n = {n}");
    }
}

#[test]
fn unit_terminated_family_determines_one_tuple() {
    for n in 2..=16 {
        let x = property4_tuple(n).unwrap();
        let verdict = rigidity_by_propagation(&x, true);
        let SearchVerdict::Determined(set) = verdict else {
            panic!("propagation must close for the unit-terminated tuple, n = {n}");
        };
        let expected: BTreeSet<IntTuple> = [x].into_iter().collect();
        assert_eq!(set, expected, "n = {n}");
    }
}

#[test]
fn determined_set_is_complete_within_a_box() {
    // Independent completeness witness for the n = 3 doubling tuple: scan
    // the whole [-16, 16]^3 box for relation-preserving tuples.
    let x = doubling_tuple(3).unwrap();
    let SearchVerdict::Determined(determined) = rigidity_by_propagation(&x, false) else {
        panic!("expected closure");
    };
    let mut brute = BTreeSet::new();
    for m in 0..=16u64 {
        for y in shell_tuples(3, m) {
            if is_relation_morphism(&x, &y, false).unwrap() {
                brute.insert(y);
            }
        }
    }
    assert_eq!(determined, brute);
}

#[test]
fn property4_search_is_consistent_with_rigidity() {
    // No counterexample below the cap for the unit-terminated family; the
    // cap shrinks with the dimension to keep the scans tractable.
    let caps = [(2usize, 1000u64), (3, 60), (4, 16), (5, 8), (6, 5)];
    for (n, cap) in caps {
        let x = property4_tuple(n).unwrap();
        assert_eq!(
            check_property4(&x, cap),
            SearchVerdict::NoneUpToCap { shell_cap: cap },
            "n = {n}"
        );
    }
}

#[test]
fn property4_finds_the_least_counterexample() {
    // For (2, 4): relations are 2+2=4 and 2*2=4 on (1,1,2); the zero tuple
    // preserves them and differs in the first coordinate.
    let verdict = check_property4(&IntTuple::from_i64s(&[2, 4]), 10);
    assert_eq!(
        verdict,
        SearchVerdict::Counterexample(IntTuple::from_i64s(&[0, 0]))
    );
}

#[cfg(feature = "parallel")]
#[test]
fn psi_lanes_agree_on_a_domain_slice() {
    use en_search::{check_psi_in_domain, check_psi_in_domain_par};
    let seq = en_search::check_psi_seq(2, 64);
    let par = en_search::check_psi_par(2, 64);
    assert_eq!(seq, par);
    assert_eq!(
        check_psi_in_domain(2, 4, 6, 64),
        check_psi_in_domain_par(2, 4, 6, 64)
    );
}
