use std::collections::{BTreeMap, BTreeSet};

use en_core::{relations_of, EnEquation, EnSystem, IntTuple, RelationSet};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::verdict::SearchVerdict;

/// Constraint store shared by tuple-relation propagation and system
/// propagation: unit indices plus additive and multiplicative triples.
struct Constraints {
    n: usize,
    units: Vec<usize>,
    adds: Vec<(usize, usize, usize)>,
    muls: Vec<(usize, usize, usize)>,
}

impl Constraints {
    fn from_relations(n: usize, rels: &RelationSet, include_units: bool) -> Self {
        Constraints {
            n,
            units: if include_units {
                rels.units().iter().copied().collect()
            } else {
                Vec::new()
            },
            adds: rels.adds().iter().copied().collect(),
            muls: rels.muls().iter().copied().collect(),
        }
    }

    fn from_system(system: &EnSystem) -> Self {
        let mut units = Vec::new();
        let mut adds = Vec::new();
        let mut muls = Vec::new();
        for eq in system.equations() {
            match *eq {
                EnEquation::Unit { i } => units.push(i),
                EnEquation::Add { i, j, k } => adds.push((i, j, k)),
                EnEquation::Mul { i, j, k } => muls.push((i, j, k)),
            }
        }
        Constraints {
            n: system.n(),
            units,
            adds,
            muls,
        }
    }

    fn satisfied_by(&self, values: &[BigInt]) -> bool {
        self.units.iter().all(|&i| values[i - 1] == BigInt::from(1))
            && self
                .adds
                .iter()
                .all(|&(i, j, k)| &values[i - 1] + &values[j - 1] == values[k - 1])
            && self
                .muls
                .iter()
                .all(|&(i, j, k)| &values[i - 1] * &values[j - 1] == values[k - 1])
    }

    /// Candidate values implied by self-contained constraints:
    /// `x_i = 1` pins 1, `t + t = t` pins 0, `t * t = t` allows {0, 1},
    /// and the pair `t + t = k`, `t * t = k` allows {0, 2}.
    fn seeds(&self) -> BTreeMap<usize, Vec<BigInt>> {
        let mut seeds: BTreeMap<usize, BTreeSet<BigInt>> = BTreeMap::new();
        let mut merge = |coord: usize, values: Vec<BigInt>| {
            let values: BTreeSet<BigInt> = values.into_iter().collect();
            seeds
                .entry(coord)
                .and_modify(|existing| {
                    *existing = existing.intersection(&values).cloned().collect()
                })
                .or_insert(values);
        };
        for &i in &self.units {
            merge(i, vec![BigInt::from(1)]);
        }
        let doubled: BTreeSet<(usize, usize)> = self
            .adds
            .iter()
            .filter(|&&(i, j, _)| i == j)
            .map(|&(i, _, k)| (i, k))
            .collect();
        for &(i, k) in &doubled {
            if i == k {
                merge(i, vec![BigInt::zero()]);
            }
        }
        for &(i, j, k) in &self.muls {
            if i == j && j == k {
                merge(i, vec![BigInt::zero(), BigInt::from(1)]);
            } else if i == j && doubled.contains(&(i, k)) {
                // 2t = t^2 over the integers
                merge(i, vec![BigInt::zero(), BigInt::from(2)]);
            }
        }
        seeds
            .into_iter()
            .map(|(coord, values)| (coord, values.into_iter().collect()))
            .collect()
    }
}

enum CloseResult {
    Consistent,
    Contradiction,
}

/// Record a derived value; `false` signals a conflict with an existing
/// assignment.
fn set(values: &mut [Option<BigInt>], coord: usize, value: BigInt, changed: &mut bool) -> bool {
    match &values[coord - 1] {
        Some(existing) => *existing == value,
        None => {
            values[coord - 1] = Some(value);
            *changed = true;
            true
        }
    }
}

/// Derive every functionally forced value: the third member of an addition
/// from any two, a product from its factors, and an exact quotient when a
/// nonzero factor and the product are known. Square roots are left to the
/// branching layer.
fn close(c: &Constraints, values: &mut [Option<BigInt>]) -> CloseResult {
    loop {
        let mut changed = false;
        for &i in &c.units {
            if !set(values, i, BigInt::from(1), &mut changed) {
                return CloseResult::Contradiction;
            }
        }
        for &(i, j, k) in &c.adds {
            let derived = match (&values[i - 1], &values[j - 1], &values[k - 1]) {
                (Some(a), Some(b), _) => Some((k, a + b)),
                (Some(a), None, Some(s)) => Some((j, s - a)),
                (None, Some(b), Some(s)) => Some((i, s - b)),
                _ => None,
            };
            if let Some((coord, value)) = derived {
                if !set(values, coord, value, &mut changed) {
                    return CloseResult::Contradiction;
                }
            }
        }
        for &(i, j, k) in &c.muls {
            let derived = match (&values[i - 1], &values[j - 1], &values[k - 1]) {
                (Some(a), Some(b), _) => Some((k, a * b)),
                (Some(a), None, Some(p)) if i != j => {
                    if a.is_zero() {
                        if !p.is_zero() {
                            return CloseResult::Contradiction;
                        }
                        None
                    } else if (p % a).is_zero() {
                        Some((j, p / a))
                    } else {
                        return CloseResult::Contradiction;
                    }
                }
                (None, Some(b), Some(p)) if i != j => {
                    if b.is_zero() {
                        if !p.is_zero() {
                            return CloseResult::Contradiction;
                        }
                        None
                    } else if (p % b).is_zero() {
                        Some((i, p / b))
                    } else {
                        return CloseResult::Contradiction;
                    }
                }
                _ => None,
            };
            if let Some((coord, value)) = derived {
                if !set(values, coord, value, &mut changed) {
                    return CloseResult::Contradiction;
                }
            }
        }
        if !changed {
            return CloseResult::Consistent;
        }
    }
}

struct Engine<'a> {
    constraints: &'a Constraints,
    seeds: BTreeMap<usize, Vec<BigInt>>,
    solutions: BTreeSet<IntTuple>,
}

enum EngineError {
    Stalled,
}

impl Engine<'_> {
    fn search(&mut self, mut values: Vec<Option<BigInt>>) -> Result<(), EngineError> {
        match close(self.constraints, &mut values) {
            CloseResult::Contradiction => return Ok(()),
            CloseResult::Consistent => {}
        }

        if values.iter().all(Option::is_some) {
            let tuple: Vec<BigInt> = values.into_iter().map(Option::unwrap).collect();
            if self.constraints.satisfied_by(&tuple) {
                self.solutions.insert(IntTuple::new(tuple).expect("n >= 1"));
            }
            return Ok(());
        }

        // Branch on an unconsumed seed first.
        let seed = self
            .seeds
            .iter()
            .find(|(&coord, _)| values[coord - 1].is_none())
            .map(|(&coord, vals)| (coord, vals.clone()));
        if let Some((coord, candidates)) = seed {
            for value in candidates {
                let mut branch = values.clone();
                branch[coord - 1] = Some(value);
                self.search(branch)?;
            }
            return Ok(());
        }

        // Then on a square with a known product: two integer roots at most.
        let square = self
            .constraints
            .muls
            .iter()
            .find(|&&(i, j, k)| i == j && values[i - 1].is_none() && values[k - 1].is_some());
        if let Some(&(i, _, k)) = square {
            let product = values[k - 1].clone().expect("checked");
            if product.is_negative() {
                return Ok(()); // no integer square root
            }
            let root = product.sqrt();
            if &root * &root != product {
                return Ok(());
            }
            let mut candidates = vec![root.clone()];
            if !root.is_zero() {
                candidates.push(-root);
            }
            for value in candidates {
                let mut branch = values.clone();
                branch[i - 1] = Some(value);
                self.search(branch)?;
            }
            return Ok(());
        }

        Err(EngineError::Stalled)
    }
}

fn run_engine(constraints: &Constraints) -> SearchVerdict {
    let seeds = constraints.seeds();
    if seeds.is_empty() {
        return SearchVerdict::Indeterminate;
    }
    let mut engine = Engine {
        constraints,
        seeds,
        solutions: BTreeSet::new(),
    };
    match engine.search(vec![None; constraints.n]) {
        Ok(()) => SearchVerdict::Determined(engine.solutions),
        Err(EngineError::Stalled) => SearchVerdict::Indeterminate,
    }
}

/// Propagate a relation set directly (used by the finitized-statement
/// check, which escalates on cap exhaustion).
pub(crate) fn propagate_relations(
    n: usize,
    rels: &RelationSet,
    include_units: bool,
) -> SearchVerdict {
    run_engine(&Constraints::from_relations(n, rels, include_units))
}

/// Determine the full set of tuples preserving every relation of `x`, by
/// seeding from self-contained constraints and propagating functional
/// consequences (sums, products, exact divisions, square roots with sign
/// branching). [`SearchVerdict::Determined`] lists the complete image set;
/// [`SearchVerdict::Indeterminate`] means propagation could not close and
/// claims nothing.
pub fn rigidity_by_propagation(x: &IntTuple, include_units: bool) -> SearchVerdict {
    let rels = relations_of(x);
    propagate_relations(x.len(), &rels, include_units)
}

/// Propagate a system's own equations the same way: on closure the result
/// is its complete solution set.
pub fn determine(system: &EnSystem) -> SearchVerdict {
    run_engine(&Constraints::from_system(system))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(tuples: &[&[i64]]) -> BTreeSet<IntTuple> {
        tuples.iter().map(|t| IntTuple::from_i64s(t)).collect()
    }

    #[test]
    fn doubling_tuple_pins_to_itself_or_zero() {
        let x = IntTuple::from_i64s(&[16, 4, 2]);
        let verdict = rigidity_by_propagation(&x, false);
        assert_eq!(
            verdict,
            SearchVerdict::Determined(set(&[&[0, 0, 0], &[16, 4, 2]]))
        );
    }

    #[test]
    fn unit_terminated_tuple_is_fully_rigid() {
        let x = IntTuple::from_i64s(&[16, 4, 2, 1]);
        let verdict = rigidity_by_propagation(&x, true);
        assert_eq!(verdict, SearchVerdict::Determined(set(&[&[16, 4, 2, 1]])));
    }

    #[test]
    fn unit_terminated_tuple_without_units_gains_zero() {
        let x = IntTuple::from_i64s(&[4, 2, 1]);
        let verdict = rigidity_by_propagation(&x, false);
        assert_eq!(
            verdict,
            SearchVerdict::Determined(set(&[&[0, 0, 0], &[4, 2, 1]]))
        );
    }

    #[test]
    fn seedless_tuple_is_indeterminate() {
        let verdict = rigidity_by_propagation(&IntTuple::from_i64s(&[3]), false);
        assert_eq!(verdict, SearchVerdict::Indeterminate);
    }

    #[test]
    fn determined_sets_match_bounded_brute_force() {
        use crate::order::shell_tuples;
        for x in [
            IntTuple::from_i64s(&[4, 2]),
            IntTuple::from_i64s(&[4, 2, 1]),
            IntTuple::from_i64s(&[2, 1]),
        ] {
            for include_units in [false, true] {
                let verdict = rigidity_by_propagation(&x, include_units);
                let SearchVerdict::Determined(determined) = verdict else {
                    panic!("expected closure for {x}");
                };
                let rels = en_core::relations_of(&x);
                let mut brute = BTreeSet::new();
                for m in 0..=6u64 {
                    for y in shell_tuples(x.len(), m) {
                        if rels.holds_in(&y, include_units) {
                            brute.insert(y);
                        }
                    }
                }
                // Propagation may list members beyond the brute-force box;
                // inside the box the sets must agree exactly.
                let bound = BigInt::from(6);
                let determined_in_box: BTreeSet<IntTuple> = determined
                    .iter()
                    .filter(|t| t.values().iter().all(|v| v.abs() <= bound))
                    .cloned()
                    .collect();
                assert_eq!(determined_in_box, brute, "x = {x}, units = {include_units}");
            }
        }
    }

    #[test]
    fn system_propagation_solves_a_rigid_chain() {
        // t1 = 1, t1 + t1 = t2, t2 + t2 = w
        let sys = EnSystem::from_equations(
            3,
            [
                EnEquation::unit(1),
                EnEquation::add(1, 1, 2),
                EnEquation::add(2, 2, 3),
            ],
        )
        .unwrap();
        assert_eq!(
            determine(&sys),
            SearchVerdict::Determined(set(&[&[1, 2, 4]]))
        );
    }

    #[test]
    fn system_propagation_detects_inconsistency() {
        let sys =
            EnSystem::from_equations(1, [EnEquation::unit(1), EnEquation::add(1, 1, 1)]).unwrap();
        assert_eq!(determine(&sys), SearchVerdict::Determined(BTreeSet::new()));
    }

    #[test]
    fn free_variable_stalls_system_propagation() {
        // u + u = v leaves u free: no seed can close it.
        let sys = EnSystem::from_equations(2, [EnEquation::add(1, 1, 2)]).unwrap();
        assert_eq!(determine(&sys), SearchVerdict::Indeterminate);
    }
}
