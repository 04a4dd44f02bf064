use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Fractional part `{x}` in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(floor(x))
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// `x mod 1`, the same as [`frac`] but named for pairings valued in Q/Z.
pub fn mod_one(x: &BigRational) -> BigRational {
    frac(x)
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Inverse of `a` modulo `m` (`m >= 1`), if it exists. Returns a value in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_frac_of_negatives() {
        assert_eq!(floor(&rat(-1, 3)), BigInt::from(-1));
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&rat(7, 7)), rat(0, 1));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(&BigInt::from(10), &BigInt::from(3)), Some(BigInt::from(1)));
        assert_eq!(mod_inverse(&BigInt::from(-2), &BigInt::from(5)), Some(BigInt::from(2)));
        assert_eq!(mod_inverse(&BigInt::from(4), &BigInt::from(6)), None);
    }
}
