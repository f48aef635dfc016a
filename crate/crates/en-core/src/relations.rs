use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, IntTuple, Result};

/// Every unit/additive/multiplicative relation a tuple satisfies.
///
/// Triples are canonical (`i <= j`); membership is exactly satisfaction by
/// the source tuple, so the set is the full hypothesis side of a
/// relation-preservation check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationSet {
    units: BTreeSet<usize>,
    adds: BTreeSet<(usize, usize, usize)>,
    muls: BTreeSet<(usize, usize, usize)>,
}

impl RelationSet {
    pub fn new(
        units: BTreeSet<usize>,
        adds: BTreeSet<(usize, usize, usize)>,
        muls: BTreeSet<(usize, usize, usize)>,
    ) -> Self {
        debug_assert!(adds.iter().chain(&muls).all(|&(i, j, _)| i <= j));
        RelationSet { units, adds, muls }
    }

    pub fn units(&self) -> &BTreeSet<usize> {
        &self.units
    }

    pub fn adds(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.adds
    }

    pub fn muls(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.muls
    }

    /// True iff every relation of the set holds in `y` (units only when
    /// `include_units`).
    pub fn holds_in(&self, y: &IntTuple, include_units: bool) -> bool {
        if include_units && !self.units.iter().all(|&i| y.coord(i).is_one()) {
            return false;
        }
        self.adds
            .iter()
            .all(|&(i, j, k)| y.coord(i) + y.coord(j) == *y.coord(k))
            && self
                .muls
                .iter()
                .all(|&(i, j, k)| y.coord(i) * y.coord(j) == *y.coord(k))
    }
}

/// Exact scan for all relations satisfied by `t`.
///
/// Pair sums and products are looked up in a sorted value index, so the
/// scan costs O(n^2 log n) big-integer comparisons rather than O(n^3).
pub fn relations_of(t: &IntTuple) -> RelationSet {
    let n = t.len();
    let mut by_value: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for i in 1..=n {
        by_value.entry(t.coord(i)).or_default().push(i);
    }

    let mut units = BTreeSet::new();
    let mut adds = BTreeSet::new();
    let mut muls = BTreeSet::new();
    for i in 1..=n {
        if t.coord(i).is_one() {
            units.insert(i);
        }
        for j in i..=n {
            let sum = t.coord(i) + t.coord(j);
            if let Some(ks) = by_value.get(&sum) {
                for &k in ks {
                    adds.insert((i, j, k));
                }
            }
            let product = t.coord(i) * t.coord(j);
            if let Some(ks) = by_value.get(&product) {
                for &k in ks {
                    muls.insert((i, j, k));
                }
            }
        }
    }
    RelationSet { units, adds, muls }
}

/// True iff `y` satisfies every relation `x` does. Unit relations take part
/// only when `include_units` is set.
pub fn is_relation_morphism(x: &IntTuple, y: &IntTuple, include_units: bool) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(relations_of(x).holds_in(y, include_units))
}
