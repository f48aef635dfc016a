use en_core::{EnEquation, EnSystem, IntTuple};
use en_pell::{five_pow_9, fundamental_5pow9, surd_pow_odd};
use num_bigint::BigInt;

use crate::{ConstructionError, Result};

/// The n-variable system (n >= 12) whose integer solutions all have
/// `|x_n| > 2^(2^(n-1))`: eleven fixed equations encoding
/// `x_10^2 - 5*x_8^2 = -1` with `625 | x_8`, followed by the squaring tail
/// `x_i * x_i = x_{i+1}` for `i = 12..n-1`.
pub fn theorem1_system(n: usize) -> Result<EnSystem> {
    if n < 12 {
        return Err(ConstructionError::TooSmall { min: 12, n });
    }
    let mut equations = vec![
        EnEquation::unit(1),
        EnEquation::add(1, 1, 2),
        EnEquation::add(2, 2, 3),
        EnEquation::add(1, 3, 4),
        EnEquation::mul(4, 4, 5),
        EnEquation::mul(5, 5, 6),
        EnEquation::mul(6, 7, 8),
        EnEquation::mul(8, 8, 9),
        EnEquation::mul(10, 10, 11),
        EnEquation::add(11, 1, 12),
        EnEquation::mul(4, 9, 12),
    ];
    for i in 12..n {
        equations.push(EnEquation::mul(i, i, i + 1));
    }
    Ok(EnSystem::from_equations(n, equations)?)
}

/// A solution of [`theorem1_system`]: the head holds the constants
/// `(1, 2, 4, 5, 25, 625)`, the pair `(x_10, x_7)` is the `lift`-th odd
/// power of the minimal solution of `x^2 - 5^9 y^2 = -1`, and the tail
/// squares up from `x_12 = x_10^2 + 1`.
pub fn theorem1_witness(n: usize, lift: u64) -> Result<IntTuple> {
    if n < 12 {
        return Err(ConstructionError::TooSmall { min: 12, n });
    }
    if lift == 0 {
        return Err(ConstructionError::ZeroLift);
    }
    let d = five_pow_9();
    let pair = surd_pow_odd(&fundamental_5pow9(), 2 * lift - 1, &d)?;
    let (u, v) = (pair.x, pair.y);

    let mut values: Vec<BigInt> = vec![
        BigInt::from(1),
        BigInt::from(2),
        BigInt::from(4),
        BigInt::from(5),
        BigInt::from(25),
        BigInt::from(625),
    ];
    values.push(v.clone()); // x7
    let x8: BigInt = 625 * &v;
    values.push(x8.clone()); // x8
    values.push(&x8 * &x8); // x9
    values.push(u.clone()); // x10
    let x11 = &u * &u;
    values.push(x11.clone()); // x11
    values.push(x11 + 1); // x12
    for i in 12..n {
        let square = &values[i - 1] * &values[i - 1];
        values.push(square);
    }
    Ok(IntTuple::new(values).expect("n >= 12"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_at_12_is_the_fixed_head() {
        let sys = theorem1_system(12).unwrap();
        assert_eq!(sys.n(), 12);
        assert_eq!(sys.len(), 11);
        assert!(sys.contains(&EnEquation::mul(4, 9, 12)));
        assert!(!sys.contains(&EnEquation::mul(12, 12, 13)));
    }

    #[test]
    fn squaring_tail_grows_with_n() {
        let sys = theorem1_system(14).unwrap();
        assert_eq!(sys.len(), 13);
        assert!(sys.contains(&EnEquation::mul(12, 12, 13)));
        assert!(sys.contains(&EnEquation::mul(13, 13, 14)));
        assert!(theorem1_system(11).is_err());
    }

    #[test]
    fn witness_solves_the_system() {
        let sys = theorem1_system(12).unwrap();
        let witness = theorem1_witness(12, 1).unwrap();
        assert!(sys.check_solution(&witness).unwrap());
    }

    #[test]
    fn witness_magnitude_matches_the_printed_float() {
        let witness = theorem1_witness(12, 1).unwrap();
        assert_eq!(
            en_core::sci_notation(witness.coord(12), 10),
            "1.263545677e783"
        );
        let bound = BigInt::from(2).pow(2048);
        assert_eq!(en_core::sci_notation(&bound, 10), "3.231700607e616");
        assert!(*witness.coord(12) > bound);
    }

    #[test]
    fn tail_coordinate_is_previous_squared() {
        let w13 = theorem1_witness(13, 1).unwrap();
        assert_eq!(w13.coord(13).clone(), w13.coord(12) * w13.coord(12));
        let sys = theorem1_system(13).unwrap();
        assert!(sys.check_solution(&w13).unwrap());
    }

    #[test]
    fn sign_flips_remain_solutions() {
        let sys = theorem1_system(12).unwrap();
        let witness = theorem1_witness(12, 2).unwrap();
        let mut vals = witness.values().to_vec();
        vals[6] = -&vals[6]; // x7
        vals[7] = -&vals[7]; // x8
        let flipped = IntTuple::new(vals).unwrap();
        assert!(sys.check_solution(&flipped).unwrap());

        let mut vals = witness.values().to_vec();
        vals[9] = -&vals[9]; // x10
        let flipped = IntTuple::new(vals).unwrap();
        assert!(sys.check_solution(&flipped).unwrap());
    }
}
