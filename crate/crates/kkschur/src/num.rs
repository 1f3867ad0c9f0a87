//! Exact binomial coefficients over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Generalized binomial coefficient: 0 when `b < 0`, otherwise
/// a(a-1)...(a-b+1)/b!, valid for negative `a`.
pub fn binom_gen(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= BigInt::from(a - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom_gen(5, 2), BigInt::from(10));
        assert_eq!(binom_gen(-2, 3), BigInt::from(-4));
        assert_eq!(binom_gen(3, -1), BigInt::from(0));
        assert_eq!(binom_gen(0, 0), BigInt::from(1));
        assert_eq!(binom_gen(-1, 0), BigInt::from(1));
        assert_eq!(binom_gen(2, 5), BigInt::from(0));
    }
}
