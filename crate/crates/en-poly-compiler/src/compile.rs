use std::collections::{BTreeMap, HashMap};
use std::fmt;

use en_core::{EnEquation, EnSystem, IntTuple};
use num_bigint::BigInt;
use num_traits::{One, Signed};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::{PolyError, Polynomial, Result};

/// Variable budget guard for the literal mode.
pub const DEFAULT_FULL_T_CEILING: usize = 100_000;

/// Which equation the emitted system encodes.
///
/// `Doubled` lowers `2*D = 0` with the coefficient bound taken from `2*D`;
/// `Halved` lowers `D = 0` directly with the bound from `D`. Both are
/// equivalent to `D = 0` over the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Doubled,
    Halved,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Doubled => write!(f, "doubled"),
            Variant::Halved => write!(f, "halved"),
        }
    }
}

/// A lowered system together with the polynomial each variable denotes.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    pub system: EnSystem,
    /// Variable index -> denoted polynomial (inputs included).
    pub var_meaning: BTreeMap<usize, Polynomial>,
    /// Index whose meaning is the target polynomial; `x_q + x_q = x_q` is in
    /// the system.
    pub q: usize,
    pub variant: Variant,
    /// Input variable count; inputs occupy indices `1..=p`.
    pub p: usize,
}

impl CompiledSystem {
    /// Evaluate every variable meaning at `point`, producing the unique
    /// extension of the point. The result solves the system minus the
    /// marker equation always, and the full system iff the target
    /// polynomial vanishes at the point.
    pub fn extend_solution(&self, point: &[BigInt]) -> Result<IntTuple> {
        if point.len() != self.p {
            return Err(PolyError::LengthMismatch {
                expected: self.p,
                got: point.len(),
            });
        }
        let n = self.system.n();
        let mut values = Vec::with_capacity(n);
        for index in 1..=n {
            let meaning = self
                .var_meaning
                .get(&index)
                .expect("every variable has a meaning");
            values.push(meaning.eval(point)?);
        }
        Ok(IntTuple::new(values).expect("n >= 1"))
    }

    /// Sidecar rendering: the distinguished index and one `index: polynomial`
    /// line per variable.
    pub fn sidecar(&self) -> String {
        let mut out = format!("q: {}\n", self.q);
        for (index, meaning) in &self.var_meaning {
            out.push_str(&format!("{}: {}\n", index, meaning));
        }
        out
    }
}

fn effective_bound(poly: &Polynomial, variant: Variant) -> BigInt {
    match variant {
        Variant::Doubled => poly.max_abs_coeff() * 2,
        Variant::Halved => poly.max_abs_coeff(),
    }
}

/// Size of the family of polynomials with coefficients in `[-M, M]` and
/// per-variable degrees bounded by those of the target:
/// `(2M + 1) ^ ((d_1 + 1) * ... * (d_p + 1))`.
pub fn card_t(poly: &Polynomial, variant: Variant) -> Result<BigInt> {
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = effective_bound(poly, variant);
    let base = 2 * m + 1;
    let mut exponent: u64 = 1;
    for index in 1..=poly.var_count() {
        exponent = exponent
            .checked_mul(poly.degree_in(index) as u64 + 1)
            .expect("degree product overflow");
    }
    let mut result = BigInt::one();
    let mut e = exponent;
    let mut acc = base;
    while e > 0 {
        if e & 1 == 1 {
            result *= &acc;
        }
        e >>= 1;
        if e > 0 {
            acc = &acc * &acc;
        }
    }
    Ok(result)
}

/// Straight-line lowering state: one variable per distinct intermediate
/// polynomial, one defining equation per fresh variable.
struct Builder {
    meanings: Vec<Polynomial>,
    index_of: HashMap<Polynomial, usize>,
    equations: Vec<EnEquation>,
    p: usize,
}

impl Builder {
    fn new(p: usize) -> Self {
        let mut builder = Builder {
            meanings: Vec::new(),
            index_of: HashMap::new(),
            equations: Vec::new(),
            p,
        };
        for index in 1..=p {
            builder.push(Polynomial::var(index, p));
        }
        builder
    }

    fn push(&mut self, meaning: Polynomial) -> usize {
        let index = self.meanings.len() + 1;
        self.index_of.insert(meaning.clone(), index);
        self.meanings.push(meaning);
        index
    }

    fn one(&mut self) -> usize {
        let unit = Polynomial::constant(1, self.p);
        if let Some(&idx) = self.index_of.get(&unit) {
            return idx;
        }
        let idx = self.push(unit);
        self.equations.push(EnEquation::unit(idx));
        idx
    }

    fn zero(&mut self) -> usize {
        let zero = Polynomial::zero(self.p);
        if let Some(&idx) = self.index_of.get(&zero) {
            return idx;
        }
        let idx = self.push(zero);
        self.equations.push(EnEquation::add(idx, idx, idx));
        idx
    }

    fn add_vars(&mut self, a: usize, b: usize) -> usize {
        let meaning = self.meanings[a - 1].add(&self.meanings[b - 1]);
        if let Some(&idx) = self.index_of.get(&meaning) {
            return idx;
        }
        let idx = self.push(meaning);
        self.equations.push(EnEquation::add(a, b, idx));
        idx
    }

    fn mul_vars(&mut self, a: usize, b: usize) -> usize {
        let meaning = self.meanings[a - 1].mul(&self.meanings[b - 1]);
        if let Some(&idx) = self.index_of.get(&meaning) {
            return idx;
        }
        let idx = self.push(meaning);
        self.equations.push(EnEquation::mul(a, b, idx));
        idx
    }

    /// Positive constant by binary doubling and addition.
    fn constant(&mut self, value: &BigInt) -> usize {
        debug_assert!(value.is_positive());
        let target = Polynomial::constant(value.clone(), self.p);
        if let Some(&idx) = self.index_of.get(&target) {
            return idx;
        }
        let one = self.one();
        let bits = value.bits();
        let mut current = one;
        for bit in (0..bits - 1).rev() {
            current = self.add_vars(current, current);
            if value.bit(bit) {
                current = self.add_vars(current, one);
            }
        }
        current
    }

    fn power(&mut self, base: usize, exp: u32) -> usize {
        debug_assert!(exp >= 1);
        if exp == 1 {
            return base;
        }
        let half = self.power(base, exp / 2);
        let squared = self.mul_vars(half, half);
        if exp % 2 == 1 {
            self.mul_vars(squared, base)
        } else {
            squared
        }
    }

    /// Variable for `|coeff| * monomial` (coefficient sign handled by the
    /// caller).
    fn term(&mut self, abs_coeff: &BigInt, exponents: &[u32]) -> usize {
        let mut factors: Vec<usize> = Vec::new();
        for (var, &exp) in exponents.iter().enumerate() {
            if exp > 0 {
                factors.push(self.power(var + 1, exp));
            }
        }
        match factors.split_first() {
            None => self.constant(abs_coeff),
            Some((&first, rest)) => {
                let mut acc = first;
                for &f in rest {
                    acc = self.mul_vars(acc, f);
                }
                if abs_coeff.is_one() {
                    acc
                } else {
                    let c = self.constant(abs_coeff);
                    self.mul_vars(c, acc)
                }
            }
        }
    }

    fn sum(&mut self, terms: &[usize]) -> usize {
        let (&first, rest) = terms.split_first().expect("nonempty");
        let mut acc = first;
        for &t in rest {
            acc = self.add_vars(acc, t);
        }
        acc
    }
}

/// Compact lowering: a straight-line derivation of the target polynomial.
///
/// Constants are built by binary doubling, powers by square-and-multiply,
/// and negative coefficients enter through rearranged additions
/// `t + b = a` (encoding `t = a - b`). The marker `x_q + x_q = x_q` is
/// appended last. For every integer point, the target vanishes iff the
/// unique extension of the point solves the system.
pub fn compile_compact(poly: &Polynomial, variant: Variant) -> Result<CompiledSystem> {
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let target = match variant {
        Variant::Doubled => poly.scale(&BigInt::from(2)),
        Variant::Halved => poly.clone(),
    };
    let p = poly.var_count();
    let mut builder = Builder::new(p);

    // Leading terms first; split by coefficient sign.
    let mut positive: Vec<(BigInt, Vec<u32>)> = Vec::new();
    let mut negative: Vec<(BigInt, Vec<u32>)> = Vec::new();
    for (mono, coeff) in target.terms() {
        let entry = (coeff.abs(), mono.exponents().to_vec());
        if coeff.is_positive() {
            positive.push(entry);
        } else {
            negative.push(entry);
        }
    }
    positive.reverse();
    negative.reverse();

    let build_side = |builder: &mut Builder, side: &[(BigInt, Vec<u32>)]| -> usize {
        let vars: Vec<usize> = side
            .iter()
            .map(|(coeff, exps)| builder.term(coeff, exps))
            .collect();
        builder.sum(&vars)
    };

    let q = if negative.is_empty() {
        build_side(&mut builder, &positive)
    } else if positive.is_empty() {
        let negated = build_side(&mut builder, &negative);
        let zero = builder.zero();
        let q = builder.push(target.clone());
        builder.equations.push(EnEquation::add(q, negated, zero));
        q
    } else {
        let pos = build_side(&mut builder, &positive);
        let neg = build_side(&mut builder, &negative);
        match builder.index_of.get(&target) {
            Some(&idx) => idx,
            None => {
                let q = builder.push(target.clone());
                builder.equations.push(EnEquation::add(q, neg, pos));
                q
            }
        }
    };

    builder.equations.push(EnEquation::add(q, q, q));

    let n = builder.meanings.len();
    let system =
        EnSystem::from_equations(n, builder.equations).expect("lowered equations are in range");
    let var_meaning = builder
        .meanings
        .into_iter()
        .enumerate()
        .map(|(i, meaning)| (i + 1, meaning))
        .collect();
    Ok(CompiledSystem {
        system,
        var_meaning,
        q,
        variant,
        p,
    })
}

/// Literal lowering with the default ceiling. See
/// [`compile_full_t_with_ceiling`].
pub fn compile_full_t(poly: &Polynomial) -> Result<CompiledSystem> {
    compile_full_t_with_ceiling(poly, DEFAULT_FULL_T_CEILING)
}

/// Literal lowering: materialize the whole family of polynomials with
/// per-variable degrees bounded by the target's and coefficients in
/// `[-M, M]` for `M` taken from `2*D`, then emit every unit/add/mul
/// identity among them. Tiny instances only; the variable count equals the
/// family size.
pub fn compile_full_t_with_ceiling(poly: &Polynomial, ceiling: usize) -> Result<CompiledSystem> {
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = poly.var_count();
    for index in 1..=p {
        if poly.degree_in(index) == 0 {
            return Err(PolyError::UnusedVariable { index });
        }
    }

    let m_big = effective_bound(poly, Variant::Doubled);
    let card = card_t(poly, Variant::Doubled)?;
    if card > BigInt::from(ceiling) {
        return Err(PolyError::CeilingExceeded { ceiling });
    }
    let m = i64::try_from(&m_big).expect("bound fits once the ceiling holds");

    // Monomial grid in ascending graded-lexicographic order.
    let degrees: Vec<u32> = (1..=p).map(|i| poly.degree_in(i)).collect();
    let mut grid: Vec<Vec<u32>> = vec![vec![]];
    for &d in &degrees {
        let mut next = Vec::with_capacity(grid.len() * (d as usize + 1));
        for partial in &grid {
            for e in 0..=d {
                let mut exps = partial.clone();
                exps.push(e);
                next.push(exps);
            }
        }
        grid = next;
    }
    let mut monomials: Vec<crate::Monomial> = grid.into_iter().map(crate::Monomial::new).collect();
    monomials.sort();

    // All coefficient vectors, ordered by total absolute weight then
    // lexicographically; any fixed order yields a valid assignment, this
    // one is the frozen convention.
    let width = (2 * m + 1) as usize;
    let total = usize::try_from(&card).expect("within ceiling");
    let mut family: Vec<(u64, Vec<i64>, Polynomial)> = Vec::with_capacity(total);
    for code in 0..total {
        let mut rem = code;
        let mut coeffs = Vec::with_capacity(monomials.len());
        for _ in 0..monomials.len() {
            coeffs.push((rem % width) as i64 - m);
            rem /= width;
        }
        let weight: u64 = coeffs.iter().map(|c| c.unsigned_abs()).sum();
        let member = Polynomial::from_terms(
            p,
            monomials
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(mono, &c)| (mono.exponents().to_vec(), BigInt::from(c))),
        );
        family.push((weight, coeffs, member));
    }
    family.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    // Inputs keep indices 1..=p; the rest of the family follows in order.
    let inputs: Vec<Polynomial> = (1..=p).map(|i| Polynomial::var(i, p)).collect();
    let mut meanings: Vec<Polynomial> = inputs.clone();
    for (_, _, member) in family {
        if !inputs.contains(&member) {
            meanings.push(member);
        }
    }
    debug_assert_eq!(meanings.len(), total);

    let index_of: HashMap<&Polynomial, usize> = meanings
        .iter()
        .enumerate()
        .map(|(i, poly)| (poly, i + 1))
        .collect();

    let scan_row = |i: usize| -> Vec<EnEquation> {
        let mut found = Vec::new();
        let lhs = &meanings[i - 1];
        if lhs.is_one() {
            found.push(EnEquation::unit(i));
        }
        for j in i..=total {
            let rhs = &meanings[j - 1];
            if let Some(&k) = index_of.get(&lhs.add(rhs)) {
                found.push(EnEquation::add(i, j, k));
            }
            if let Some(&k) = index_of.get(&lhs.mul(rhs)) {
                found.push(EnEquation::mul(i, j, k));
            }
        }
        found
    };

    #[cfg(feature = "parallel")]
    let mut equations: Vec<EnEquation> = (1..=total)
        .into_par_iter()
        .flat_map_iter(scan_row)
        .collect();
    #[cfg(not(feature = "parallel"))]
    let mut equations: Vec<EnEquation> = (1..=total).flat_map(scan_row).collect();

    let target = poly.scale(&BigInt::from(2));
    let q = *index_of.get(&target).expect("2*D belongs to the family");
    equations.push(EnEquation::add(q, q, q));

    let system = EnSystem::from_equations(total, equations).expect("identities are in range");
    let var_meaning = meanings
        .into_iter()
        .enumerate()
        .map(|(i, meaning)| (i + 1, meaning))
        .collect();
    Ok(CompiledSystem {
        system,
        var_meaning,
        q,
        variant: Variant::Doubled,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_polynomial;
    use num_traits::Zero;

    fn check_meanings_are_identities(compiled: &CompiledSystem) {
        for eq in compiled.system.equations() {
            match *eq {
                EnEquation::Unit { i } => {
                    assert!(
                        compiled.var_meaning[&i].is_one(),
                        "x{i} = 1 not an identity"
                    );
                }
                EnEquation::Add { i, j, k } => {
                    let sum = compiled.var_meaning[&i].add(&compiled.var_meaning[&j]);
                    if (i, j) == (compiled.q, compiled.q) && k == compiled.q {
                        continue; // the marker is the one non-identity
                    }
                    assert_eq!(sum, compiled.var_meaning[&k], "x{i} + x{j} = x{k}");
                }
                EnEquation::Mul { i, j, k } => {
                    let product = compiled.var_meaning[&i].mul(&compiled.var_meaning[&j]);
                    assert_eq!(product, compiled.var_meaning[&k], "x{i} * x{j} = x{k}");
                }
            }
        }
    }

    #[test]
    fn card_examples() {
        let x1 = parse_polynomial("x1").unwrap();
        assert_eq!(card_t(&x1, Variant::Doubled).unwrap(), BigInt::from(25));
        let diff = parse_polynomial("x1 - x2").unwrap();
        assert_eq!(card_t(&diff, Variant::Halved).unwrap(), BigInt::from(81));
        let conic = parse_polynomial("x1^2 - 5*x2^2 + 1").unwrap();
        assert_eq!(
            card_t(&conic, Variant::Halved).unwrap(),
            BigInt::from(2357947691u64)
        );
        assert!(matches!(
            card_t(&Polynomial::zero(1), Variant::Halved),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn compact_difference_is_three_variables() {
        let diff = parse_polynomial("x1 - x2").unwrap();
        let compiled = compile_compact(&diff, Variant::Halved).unwrap();
        assert_eq!(compiled.system.n(), 3);
        assert_eq!(compiled.q, 3);
        let expected =
            EnSystem::from_equations(3, [EnEquation::add(3, 2, 1), EnEquation::add(3, 3, 3)])
                .unwrap();
        assert_eq!(compiled.system, expected);
        check_meanings_are_identities(&compiled);

        // Direct solve over a small box: solutions are exactly (a, a, 0).
        let mut solutions = Vec::new();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -5i64..=5 {
                    let t = IntTuple::from_i64s(&[a, b, c]);
                    if compiled.system.check_solution(&t).unwrap() {
                        solutions.push((a, b, c));
                    }
                }
            }
        }
        let expected: Vec<(i64, i64, i64)> = (-5..=5).map(|a| (a, a, 0)).collect();
        assert_eq!(solutions, expected);
    }

    #[test]
    fn compact_constant_one_is_insolvable() {
        let one = parse_polynomial("1").unwrap();
        let compiled = compile_compact(&one, Variant::Halved).unwrap();
        assert!(compiled
            .system
            .equations()
            .any(|eq| matches!(eq, EnEquation::Unit { .. })));
        assert!(compiled
            .system
            .contains(&EnEquation::add(compiled.q, compiled.q, compiled.q)));
        for v in -3i64..=3 {
            assert!(!compiled
                .system
                .check_solution(&IntTuple::from_i64s(&[v]))
                .unwrap());
        }
        check_meanings_are_identities(&compiled);
    }

    #[test]
    fn compact_conic_matches_brute_force() {
        let conic = parse_polynomial("x1^2 - 5*x2^2 + 1").unwrap();
        let compiled = compile_compact(&conic, Variant::Halved).unwrap();
        check_meanings_are_identities(&compiled);
        let mut points = Vec::new();
        for a in -40i64..=40 {
            for b in -40i64..=40 {
                let point = [BigInt::from(a), BigInt::from(b)];
                let extension = compiled.extend_solution(&point).unwrap();
                let solves = compiled.system.check_solution(&extension).unwrap();
                assert_eq!(solves, conic.eval(&point).unwrap().is_zero());
                if solves {
                    points.push((a, b));
                }
            }
        }
        points.sort();
        assert_eq!(
            points,
            vec![
                (-38, -17),
                (-38, 17),
                (-2, -1),
                (-2, 1),
                (2, -1),
                (2, 1),
                (38, -17),
                (38, 17)
            ]
        );
    }

    #[test]
    fn extend_solution_examples() {
        let diff = parse_polynomial("x1 - x2").unwrap();
        let compiled = compile_compact(&diff, Variant::Halved).unwrap();

        let good = compiled
            .extend_solution(&[BigInt::from(4), BigInt::from(4)])
            .unwrap();
        assert_eq!(good, IntTuple::from_i64s(&[4, 4, 0]));
        assert!(compiled.system.check_solution(&good).unwrap());

        let bad = compiled
            .extend_solution(&[BigInt::from(4), BigInt::from(3)])
            .unwrap();
        assert_eq!(bad, IntTuple::from_i64s(&[4, 3, 1]));
        assert!(!compiled.system.check_solution(&bad).unwrap());
        let failures: Vec<&EnEquation> = compiled
            .system
            .equations()
            .filter(|eq| match **eq {
                EnEquation::Unit { i } => !bad.coord(i).is_one(),
                EnEquation::Add { i, j, k } => bad.coord(i) + bad.coord(j) != *bad.coord(k),
                EnEquation::Mul { i, j, k } => bad.coord(i) * bad.coord(j) != *bad.coord(k),
            })
            .collect();
        assert_eq!(failures, vec![&EnEquation::add(3, 3, 3)]);

        assert!(compiled.extend_solution(&[BigInt::from(1)]).is_err());
    }

    #[test]
    fn marker_forces_zero() {
        // x_q + x_q = x_q has only x_q = 0 over the integers; observed on
        // the compiled difference system.
        let diff = parse_polynomial("x1 - x2").unwrap();
        let compiled = compile_compact(&diff, Variant::Halved).unwrap();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                for c in -5i64..=5 {
                    let t = IntTuple::from_i64s(&[a, b, c]);
                    if compiled.system.check_solution(&t).unwrap() {
                        assert_eq!(c, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn full_t_on_one_variable() {
        let x1 = parse_polynomial("x1").unwrap();
        let compiled = compile_full_t(&x1).unwrap();
        assert_eq!(compiled.system.n(), 25);
        assert_eq!(compiled.var_meaning.len(), 25);
        check_meanings_are_identities(&compiled);

        // Every polynomial a + b*x1 with a, b in [-2, 2] appears exactly once.
        let mut seen = std::collections::HashSet::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let member =
                    Polynomial::constant(a, 1).add(&Polynomial::var(1, 1).scale(&BigInt::from(b)));
                let found = compiled
                    .var_meaning
                    .values()
                    .filter(|m| **m == member)
                    .count();
                assert_eq!(found, 1, "{member} appears {found} times");
                seen.insert(member);
            }
        }
        assert_eq!(seen.len(), 25);

        // 1 + 1 = 2 appears as an addition among the constants.
        let one = *compiled
            .var_meaning
            .iter()
            .find(|(_, m)| **m == Polynomial::constant(1, 1))
            .unwrap()
            .0;
        let two = *compiled
            .var_meaning
            .iter()
            .find(|(_, m)| **m == Polynomial::constant(2, 1))
            .unwrap()
            .0;
        assert!(compiled.system.contains(&EnEquation::add(one, one, two)));

        // Solutions project to x1 = 0 exactly.
        for v in -3i64..=3 {
            let extension = compiled.extend_solution(&[BigInt::from(v)]).unwrap();
            assert_eq!(compiled.system.check_solution(&extension).unwrap(), v == 0);
        }
    }

    #[test]
    fn full_t_rejects_oversized_instances() {
        let conic = parse_polynomial("x1^2 - 5*x2^2 + 1").unwrap();
        assert!(matches!(
            compile_full_t(&conic),
            Err(PolyError::CeilingExceeded { .. })
        ));
        let padded = parse_polynomial("p 2\nx1").unwrap();
        assert!(matches!(
            compile_full_t(&padded),
            Err(PolyError::UnusedVariable { index: 2 })
        ));
    }

    #[test]
    fn sidecar_lists_q_and_meanings() {
        let diff = parse_polynomial("x1 - x2").unwrap();
        let compiled = compile_compact(&diff, Variant::Halved).unwrap();
        assert_eq!(compiled.sidecar(), "q: 3\n1: x1\n2: x2\n3: x1 - x2\n");
    }
}
