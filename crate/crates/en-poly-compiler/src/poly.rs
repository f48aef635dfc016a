use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{PolyError, Result};

/// Exponent vector of a fixed variable count, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(p: usize) -> Self {
        Monomial(vec![0; p])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. No zero coefficients are stored; terms iterate in graded
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(p: usize) -> Self {
        Polynomial {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: impl Into<BigInt>, p: usize) -> Self {
        let c = c.into();
        let mut poly = Polynomial::zero(p);
        if !c.is_zero() {
            poly.terms.insert(Monomial::constant(p), c);
        }
        poly
    }

    /// The variable `x_index` (1-based) over `p` variables.
    pub fn var(index: usize, p: usize) -> Self {
        assert!(index >= 1 && index <= p, "variable index out of range");
        let mut exps = vec![0; p];
        exps[index - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), BigInt::one());
        Polynomial { p, terms }
    }

    pub fn from_terms<I>(p: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut poly = Polynomial::zero(p);
        for (exps, coeff) in entries {
            assert_eq!(exps.len(), p, "exponent vector length must equal p");
            poly.add_term(Monomial(exps), coeff);
        }
        poly
    }

    pub fn var_count(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_constant() && c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Degree in the single variable `x_index` (1-based).
    pub fn degree_in(&self, index: usize) -> u32 {
        assert!(index >= 1 && index <= self.p);
        self.terms.keys().map(|m| m.0[index - 1]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.p, other.p, "variable counts must match");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.p, other.p, "variable counts must match");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            p: self.p,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.p);
        }
        Polynomial {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.p, other.p, "variable counts must match");
        let mut out = Polynomial::zero(self.p);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> =
                    ma.0.iter()
                        .zip(&mb.0)
                        .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                        .collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn square(&self) -> Polynomial {
        self.mul(self)
    }

    /// Re-embed into a wider variable space; existing variables keep their
    /// indices.
    pub fn widen(&self, new_p: usize) -> Polynomial {
        assert!(new_p >= self.p);
        Polynomial {
            p: new_p,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.0.clone();
                    exps.resize(new_p, 0);
                    (Monomial(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.p {
            return Err(PolyError::LengthMismatch {
                expected: self.p,
                got: point.len(),
            });
        }
        let mut total = BigInt::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (value, &exp) in point.iter().zip(&mono.0) {
                if exp > 0 {
                    term *= value.pow(exp);
                }
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Leading term first.
        for (pos, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.abs();
            if mono.is_constant() {
                write!(f, "{}", abs)?;
            } else {
                let mut lead = true;
                if !abs.is_one() {
                    write!(f, "{}", abs)?;
                    lead = false;
                }
                for (var, &exp) in mono.0.iter().enumerate() {
                    if exp == 0 {
                        continue;
                    }
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    write!(f, "x{}", var + 1)?;
                    if exp > 1 {
                        write!(f, "^{}", exp)?;
                    }
                }
            }
        }
        Ok(())
    }
}
