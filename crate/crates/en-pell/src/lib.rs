//! Exact machinery for the negative Pell equation `x^2 - d*y^2 = -1`.
//!
//! For `d = 5` the positive solutions form a single orbit of the map
//! `(x, y) -> (9x + 20y, 4x + 9y)` starting from `(2, 1)`; the k-th
//! solution equals `(2 + sqrt(5))^(2k-1)` read off in `Z[sqrt(5)]`. The
//! minimal solution of `x^2 - 5^9 y^2 = -1` is recovered from the 313th
//! solution for `d = 5`, whose y-component is the first one divisible
//! by 625.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("({x}, {y}) does not solve x^2 - {d}*y^2 = -1")]
    NotASolution { x: BigInt, y: BigInt, d: BigInt },
    #[error("exponent must be odd, got {0}")]
    EvenExponent(u64),
    #[error("d must be a non-square integer >= 2, got {0}")]
    BadSurdBase(BigInt),
}

/// A solution candidate `(x, y)` for `x^2 - d*y^2 = -1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellPair {
    pub x: BigInt,
    pub y: BigInt,
}

impl PellPair {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        PellPair {
            x: x.into(),
            y: y.into(),
        }
    }

    /// Exact check of `x^2 - d*y^2 = -1`.
    pub fn solves(&self, d: &BigInt) -> bool {
        &self.x * &self.x - d * &self.y * &self.y == BigInt::from(-1)
    }
}

fn five() -> BigInt {
    BigInt::from(5)
}

/// `5^9`, the discriminant of the second Pell equation.
pub fn five_pow_9() -> BigInt {
    five().pow(9)
}

/// One step of the solution recurrence for `d = 5`:
/// `(x, y) -> (9x + 20y, 4x + 9y)`.
pub fn step_5(p: &PellPair) -> Result<PellPair, PellError> {
    let d = five();
    if !p.solves(&d) {
        return Err(PellError::NotASolution {
            x: p.x.clone(),
            y: p.y.clone(),
            d,
        });
    }
    Ok(PellPair {
        x: 9 * &p.x + 20 * &p.y,
        y: 4 * &p.x + 9 * &p.y,
    })
}

/// The first `count` positive solutions of `x^2 - 5y^2 = -1` in increasing
/// order, starting from `(2, 1)`.
pub fn enumerate_5(count: usize) -> Vec<PellPair> {
    let mut out = Vec::with_capacity(count);
    let mut current = PellPair::new(2, 1);
    for _ in 0..count {
        let next = PellPair {
            x: 9 * &current.x + 20 * &current.y,
            y: 4 * &current.x + 9 * &current.y,
        };
        out.push(std::mem::replace(&mut current, next));
    }
    out
}

fn is_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &r * &r == *v
}

/// Multiplication in `Z[sqrt(d)]`:
/// `(a.x + a.y*sqrt(d)) * (b.x + b.y*sqrt(d))`.
pub fn surd_mul(a: &PellPair, b: &PellPair, d: &BigInt) -> Result<PellPair, PellError> {
    if d < &BigInt::from(2) || is_square(d) {
        return Err(PellError::BadSurdBase(d.clone()));
    }
    Ok(PellPair {
        x: &a.x * &b.x + d * &a.y * &b.y,
        y: &a.x * &b.y + &a.y * &b.x,
    })
}

/// Odd power of a solution in `Z[sqrt(d)]` by square-and-multiply.
/// Odd exponents preserve the norm -1, so the result again solves
/// `x^2 - d*y^2 = -1`.
pub fn surd_pow_odd(p: &PellPair, exp: u64, d: &BigInt) -> Result<PellPair, PellError> {
    if exp.is_multiple_of(2) {
        return Err(PellError::EvenExponent(exp));
    }
    if !p.solves(d) {
        return Err(PellError::NotASolution {
            x: p.x.clone(),
            y: p.y.clone(),
            d: d.clone(),
        });
    }
    let mut acc = PellPair::new(1, 0);
    let mut base = p.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = surd_mul(&acc, &base, d)?;
        }
        e >>= 1;
        if e > 0 {
            base = surd_mul(&base, &base, d)?;
        }
    }
    debug_assert!(acc.solves(d));
    Ok(acc)
}

/// All indices `k` in `1..=limit` for which `modulus` divides the
/// y-component of the k-th positive solution of `x^2 - 5y^2 = -1`.
pub fn find_divisible_index(modulus: &BigInt, limit: usize) -> Vec<usize> {
    assert!(modulus.is_positive(), "modulus must be positive");
    let mut found = Vec::new();
    let mut current = PellPair::new(2, 1);
    for k in 1..=limit {
        if (&current.y % modulus).is_zero() {
            found.push(k);
        }
        current = PellPair {
            x: 9 * &current.x + 20 * &current.y,
            y: 4 * &current.x + 9 * &current.y,
        };
    }
    found
}

/// The minimal positive solution of `x^2 - 5^9 y^2 = -1`.
///
/// Built as `(u(313), v(313)/625)` where `(u(k), v(k))` enumerates the
/// solutions for `d = 5`; index 313 is the first whose y-component is
/// divisible by 625.
pub fn fundamental_5pow9() -> PellPair {
    let mut current = PellPair::new(2, 1);
    for _ in 1..313 {
        current = PellPair {
            x: 9 * &current.x + 20 * &current.y,
            y: 4 * &current.x + 9 * &current.y,
        };
    }
    let (q, r) = num_integer::Integer::div_rem(&current.y, &BigInt::from(625));
    assert!(r.is_zero(), "625 must divide v(313)");
    let pair = PellPair { x: current.x, y: q };
    assert!(
        pair.solves(&five_pow_9()),
        "derived pair must solve x^2 - 5^9 y^2 = -1"
    );
    pair
}
