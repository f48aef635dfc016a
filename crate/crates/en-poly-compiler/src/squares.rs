use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{PolyError, Polynomial, Result};

/// Deterministic four-square decomposition: the lexicographically least
/// quadruple `a <= b <= c <= d` with `a^2 + b^2 + c^2 + d^2 = v`.
pub fn four_square(v: &BigInt) -> Result<[BigInt; 4]> {
    if v.is_negative() {
        return Err(PolyError::NegativeInput);
    }
    if let Ok(small) = u64::try_from(v) {
        let [a, b, c, d] = four_square_u64(small);
        return Ok([
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            BigInt::from(d),
        ]);
    }
    four_square_big(v)
}

fn four_square_u64(v: u64) -> [u64; 4] {
    let mut a = 0u64;
    while 4 * a * a <= v {
        let rest_a = v - a * a;
        let mut b = a;
        while 3 * b * b <= rest_a {
            let rest_b = rest_a - b * b;
            let mut c = b;
            while 2 * c * c <= rest_b {
                let rest_c = rest_b - c * c;
                let d = rest_c.isqrt();
                if d * d == rest_c && d >= c {
                    return [a, b, c, d];
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

fn four_square_big(v: &BigInt) -> Result<[BigInt; 4]> {
    let mut a = BigInt::zero();
    loop {
        let a_sq = &a * &a;
        if &a_sq * 4 > *v {
            break;
        }
        let rest_a = v - &a_sq;
        let mut b = a.clone();
        loop {
            let b_sq = &b * &b;
            if &b_sq * 3 > rest_a {
                break;
            }
            let rest_b = &rest_a - &b_sq;
            let mut c = b.clone();
            loop {
                let c_sq = &c * &c;
                if &c_sq * 2 > rest_b {
                    break;
                }
                let rest_c = &rest_b - &c_sq;
                let d = rest_c.sqrt();
                if &d * &d == rest_c && d >= c {
                    return Ok([a, b, c, d]);
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

/// Turn a representation polynomial `W(x_1..x_r)` whose unknowns range over
/// nonnegative integers into one whose unknowns range over all integers:
///
/// `F = W^2 + sum_i (x_i - s_i1^2 - s_i2^2 - s_i3^2 - s_i4^2)^2`
///
/// over `5r` variables, the four fresh square slots for `x_i` sitting at
/// indices `r + 4(i-1) + 1 ..= r + 4(i-1) + 4`. `F = 0` over the integers
/// iff `W = 0` with every `x_i >= 0`.
pub fn integerize_nonneg(w: &Polynomial) -> Result<Polynomial> {
    let r = w.var_count();
    if r < 2 {
        return Err(PolyError::TooFewVariables { needed: 2, got: r });
    }
    let total = 5 * r;
    let mut f = w.widen(total).square();
    for i in 1..=r {
        let mut defect = Polynomial::var(i, total);
        for t in 1..=4 {
            let slot = Polynomial::var(r + 4 * (i - 1) + t, total);
            defect = defect.sub(&slot.square());
        }
        f = f.add(&defect.square());
    }
    Ok(f)
}
