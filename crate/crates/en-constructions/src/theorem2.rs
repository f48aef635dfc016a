use std::ops::RangeInclusive;

use en_core::{EnEquation, EnSystem, IntTuple};
use en_poly_compiler::{
    compile_compact, four_square, integerize_nonneg, CompiledSystem, Polynomial, Variant,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{ConstructionError, Result};

/// Index layout of the n-variable assembly: the lowered representation
/// formula occupies `1..=s`, followed by unit padding, the counting chain
/// `t_1..t_h` (h = floor(n/2)), and the four tail variables `w, y, u, v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Layout {
    pub s: usize,
    /// Smallest admissible n: `8 + 2s`.
    pub m_f: usize,
    pub n: usize,
    pub padding_count: usize,
    pub chain_len: usize,
    pub psi: RangeInclusive<usize>,
    pub padding: RangeInclusive<usize>,
    pub chain: RangeInclusive<usize>,
    pub w: usize,
    pub y: usize,
    pub u: usize,
    pub v: usize,
}

fn lower_representation(w: &Polynomial) -> Result<CompiledSystem> {
    let integerized = integerize_nonneg(w)?;
    Ok(compile_compact(&integerized, Variant::Halved)?)
}

fn layout_from(s: usize, n: usize) -> Result<Theorem2Layout> {
    let m_f = 8 + 2 * s;
    if n < m_f {
        return Err(ConstructionError::TooSmall { min: m_f, n });
    }
    let chain_len = n / 2;
    let padding_count = n - chain_len - 4 - s;
    let pad_start = s + 1;
    let chain_start = pad_start + padding_count;
    let w = chain_start + chain_len;
    Ok(Theorem2Layout {
        s,
        m_f,
        n,
        padding_count,
        chain_len,
        psi: 1..=s,
        padding: pad_start..=pad_start + padding_count - 1,
        chain: chain_start..=chain_start + chain_len - 1,
        w,
        y: w + 1,
        u: w + 2,
        v: w + 3,
    })
}

/// Compute the index layout for representation polynomial `w` and target
/// variable count `n`. `w` must be a representation of the intended
/// function (caller-asserted) with at least two variables; `n >= 8 + 2s`
/// where `s` is the size of the lowered formula.
pub fn theorem2_layout(w: &Polynomial, n: usize) -> Result<Theorem2Layout> {
    let compiled = lower_representation(w)?;
    layout_from(compiled.system.n(), n)
}

/// The n-variable system: the lowered representation formula, padding
/// units, the counting chain forcing `w = 2*floor(n/2)`, the parity
/// equation on `y`, `w + y = x_2`, and the free pair `u + u = v` that keeps
/// the solution set infinite. Every integer solution has `x_1 = f(n)`.
pub fn theorem2_system(w: &Polynomial, n: usize) -> Result<EnSystem> {
    let compiled = lower_representation(w)?;
    let layout = layout_from(compiled.system.n(), n)?;

    let mut equations: Vec<EnEquation> = compiled.system.equations().copied().collect();
    for z in layout.padding.clone() {
        equations.push(EnEquation::unit(z));
    }
    equations.extend(chain_equations(
        layout.chain.clone(),
        layout.w,
        layout.y,
        layout.n,
    ));
    equations.push(EnEquation::add(layout.w, layout.y, 2));
    equations.push(EnEquation::add(layout.u, layout.u, layout.v));

    Ok(EnSystem::from_equations(layout.n, equations)?)
}

fn chain_equations(chain: RangeInclusive<usize>, w: usize, y: usize, n: usize) -> Vec<EnEquation> {
    let t = |i: usize| chain.start() + i - 1; // t_1, t_2, ...
    let h = chain.end() - chain.start() + 1;
    let mut equations = vec![EnEquation::unit(t(1)), EnEquation::add(t(1), t(1), t(2))];
    for i in 2..h {
        equations.push(EnEquation::add(t(i), t(1), t(i + 1)));
    }
    equations.push(EnEquation::add(t(h), t(h), w));
    if n.is_multiple_of(2) {
        equations.push(EnEquation::add(y, y, y));
    } else {
        equations.push(EnEquation::unit(y));
    }
    equations
}

/// The chain-and-parity fragment as a standalone system over
/// `chain_len + 2` variables (`t_1..t_h` first, then `w`, then `y`).
/// Returns the system and the local indices of `w` and `y`; propagation on
/// it determines `w + y = n` without reference to the rest of the
/// assembly.
pub fn theorem2_chain_subsystem(layout: &Theorem2Layout) -> (EnSystem, usize, usize) {
    let h = layout.chain_len;
    let (w, y) = (h + 1, h + 2);
    let equations = chain_equations(1..=h, w, y, layout.n);
    let system = EnSystem::from_equations(h + 2, equations).expect("local indices are in range");
    (system, w, y)
}

/// Assemble a full solution from a nonnegative zero `(x_1..x_r)` of the
/// representation polynomial with `x_2 = n`: four-square slots are filled
/// deterministically, the lowered formula is extended through its variable
/// meanings, and the chain takes the values `1..h`.
pub fn theorem2_witness(w: &Polynomial, n: usize, nonneg_witness: &IntTuple) -> Result<IntTuple> {
    let r = w.var_count();
    if nonneg_witness.len() != r {
        return Err(ConstructionError::BadWitness(format!(
            "expected {} coordinates, got {}",
            r,
            nonneg_witness.len()
        )));
    }
    if let Some(bad) = nonneg_witness.values().iter().find(|v| v.is_negative()) {
        return Err(ConstructionError::BadWitness(format!(
            "negative coordinate {}",
            bad
        )));
    }
    let value = w.eval(nonneg_witness.values())?;
    if !value.is_zero() {
        return Err(ConstructionError::BadWitness(format!(
            "polynomial evaluates to {}, not 0",
            value
        )));
    }
    if *nonneg_witness.coord(2) != BigInt::from(n) {
        return Err(ConstructionError::BadWitness(format!(
            "second coordinate is {}, expected n = {}",
            nonneg_witness.coord(2),
            n
        )));
    }

    let compiled = lower_representation(w)?;
    let layout = layout_from(compiled.system.n(), n)?;

    let mut point: Vec<BigInt> = nonneg_witness.values().to_vec();
    for value in nonneg_witness.values() {
        point.extend(four_square(value)?);
    }
    let psi_part = compiled.extend_solution(&point)?;

    let mut values = psi_part.into_values();
    values.extend(std::iter::repeat_n(BigInt::from(1), layout.padding_count));
    values.extend((1..=layout.chain_len).map(BigInt::from));
    values.push(BigInt::from(2 * layout.chain_len)); // w
    values.push(BigInt::from(n % 2)); // y
    values.push(BigInt::zero()); // u
    values.push(BigInt::zero()); // v

    let witness = IntTuple::new(values).expect("n >= 1");
    debug_assert!(theorem2_system(w, n)?.check_solution(&witness)?);
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use en_poly_compiler::parse_polynomial;

    fn identity() -> Polynomial {
        parse_polynomial("x1 - x2").unwrap()
    }

    fn minimal_n() -> usize {
        let w = identity();
        theorem2_layout(&w, 1_000_000).unwrap().m_f
    }

    #[test]
    fn layout_partitions_the_index_space() {
        let w = identity();
        let m_f = minimal_n();
        for n in [m_f, m_f + 1, m_f + 5] {
            let layout = theorem2_layout(&w, n).unwrap();
            assert_eq!(layout.m_f, 8 + 2 * layout.s);
            let mut covered = vec![false; n + 1];
            let mut mark = |i: usize| {
                assert!(!covered[i], "index {i} covered twice");
                covered[i] = true;
            };
            layout.psi.clone().for_each(&mut mark);
            layout.padding.clone().for_each(&mut mark);
            layout.chain.clone().for_each(&mut mark);
            mark(layout.w);
            mark(layout.y);
            mark(layout.u);
            mark(layout.v);
            assert!(covered[1..].iter().all(|&c| c), "indices 1..={n} covered");
        }
    }

    #[test]
    fn padding_grows_with_n() {
        let w = identity();
        let m_f = minimal_n();
        let at_min = theorem2_layout(&w, m_f).unwrap();
        let next = theorem2_layout(&w, m_f + 1).unwrap();
        // m_f is even, so going to odd n keeps floor(n/2) and adds one slot.
        assert_eq!(next.padding_count, at_min.padding_count + 1);
        assert!(matches!(
            theorem2_layout(&w, m_f - 1),
            Err(ConstructionError::TooSmall { .. })
        ));
    }

    #[test]
    fn system_has_exactly_n_variables_and_expected_size() {
        let w = identity();
        let m_f = minimal_n();
        for n in [m_f, m_f + 1] {
            let layout = theorem2_layout(&w, n).unwrap();
            let sys = theorem2_system(&w, n).unwrap();
            assert_eq!(sys.n(), n);
            let compiled = lower_representation(&w).unwrap();
            // psi + padding + chain (h + 2 incl. parity) + w+y=x2 + u+u=v
            let expected =
                compiled.system.len() + layout.padding_count + (layout.chain_len + 2) + 2;
            assert_eq!(sys.len(), expected);
            assert!(sys.contains(&EnEquation::add(layout.u, layout.u, layout.v)));
            if n % 2 == 0 {
                assert!(sys.contains(&EnEquation::add(layout.y, layout.y, layout.y)));
            } else {
                assert!(sys.contains(&EnEquation::unit(layout.y)));
            }
        }
    }

    #[test]
    fn witness_verifies_for_the_identity_function() {
        let w = identity();
        let m_f = minimal_n();
        for n in [m_f, m_f + 1] {
            let witness_input = IntTuple::new(vec![BigInt::from(n), BigInt::from(n)]).unwrap();
            let witness = theorem2_witness(&w, n, &witness_input).unwrap();
            let sys = theorem2_system(&w, n).unwrap();
            assert!(sys.check_solution(&witness).unwrap());
            assert_eq!(*witness.coord(1), BigInt::from(n), "x1 = f(n) = n");
        }
    }

    #[test]
    fn witness_rejects_non_zeros_and_negatives() {
        let w = identity();
        let n = minimal_n();
        let bad = IntTuple::new(vec![BigInt::from(n - 1), BigInt::from(n)]).unwrap();
        assert!(matches!(
            theorem2_witness(&w, n, &bad),
            Err(ConstructionError::BadWitness(_))
        ));
        let negative = IntTuple::new(vec![BigInt::from(-(n as i64)), BigInt::from(n)]).unwrap();
        assert!(matches!(
            theorem2_witness(&w, n, &negative),
            Err(ConstructionError::BadWitness(_))
        ));
        let wrong_arg = IntTuple::new(vec![BigInt::from(7), BigInt::from(7)]).unwrap();
        assert!(matches!(
            theorem2_witness(&w, n, &wrong_arg),
            Err(ConstructionError::BadWitness(_))
        ));
    }

    #[test]
    fn chain_subsystem_shape() {
        let w = identity();
        let n = minimal_n() + 1; // odd
        let layout = theorem2_layout(&w, n).unwrap();
        let (sub, w_local, y_local) = theorem2_chain_subsystem(&layout);
        assert_eq!(sub.n(), layout.chain_len + 2);
        assert!(sub.contains(&EnEquation::unit(1)));
        assert!(sub.contains(&EnEquation::add(
            layout.chain_len,
            layout.chain_len,
            w_local
        )));
        assert!(sub.contains(&EnEquation::unit(y_local)));
    }
}
