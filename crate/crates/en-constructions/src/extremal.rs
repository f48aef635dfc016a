use en_core::IntTuple;
use num_bigint::BigInt;

use crate::{ConstructionError, Result};

fn two_tower(exp_of_exp: u32) -> BigInt {
    BigInt::from(1) << (1usize << exp_of_exp)
}

/// The descending double-exponential tuple
/// `(2^(2^(n-1)), 2^(2^(n-2)), ..., 16, 4, 2)`.
///
/// Its relation set pins every relation-preserving tuple to either itself
/// or all zeros, which is why the height bound cannot be lowered.
pub fn doubling_tuple(n: usize) -> Result<IntTuple> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { min: 2, n });
    }
    let values: Vec<BigInt> = (0..n).map(|i| two_tower((n - 1 - i) as u32)).collect();
    Ok(IntTuple::new(values).expect("n >= 2"))
}

/// The unit-terminated variant `(2^(2^(n-2)), ..., 4, 2, 1)`: with unit
/// relations included, the only relation-preserving tuple is the tuple
/// itself.
pub fn property4_tuple(n: usize) -> Result<IntTuple> {
    if n < 2 {
        return Err(ConstructionError::TooSmall { min: 2, n });
    }
    let mut values: Vec<BigInt> = (0..n - 1).map(|i| two_tower((n - 2 - i) as u32)).collect();
    values.push(BigInt::from(1));
    Ok(IntTuple::new(values).expect("n >= 2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use en_core::relations_of;

    #[test]
    fn doubling_examples() {
        assert_eq!(doubling_tuple(3).unwrap(), IntTuple::from_i64s(&[16, 4, 2]));
        assert_eq!(doubling_tuple(2).unwrap(), IntTuple::from_i64s(&[4, 2]));
        assert_eq!(
            doubling_tuple(5).unwrap(),
            IntTuple::from_i64s(&[65536, 256, 16, 4, 2])
        );
        assert!(doubling_tuple(1).is_err());
    }

    #[test]
    fn property4_examples() {
        assert_eq!(property4_tuple(3).unwrap(), IntTuple::from_i64s(&[4, 2, 1]));
        assert_eq!(property4_tuple(2).unwrap(), IntTuple::from_i64s(&[2, 1]));
        assert_eq!(
            property4_tuple(4).unwrap(),
            IntTuple::from_i64s(&[16, 4, 2, 1])
        );
        assert!(property4_tuple(1).is_err());
    }

    #[test]
    fn doubling_relations_contain_the_rigid_skeleton() {
        for n in 2..=8 {
            let tuple = doubling_tuple(n).unwrap();
            let rels = relations_of(&tuple);
            assert!(rels.adds().contains(&(n, n, n - 1)), "2 + 2 = 4 at n={n}");
            assert!(rels.muls().contains(&(n, n, n - 1)), "2 * 2 = 4 at n={n}");
            for i in 2..=n {
                assert!(
                    rels.muls().contains(&(i, i, i - 1)),
                    "squaring chain at {i}, n={n}"
                );
            }
        }
    }
}
