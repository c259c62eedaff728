use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `BigRational` keeps every value reduced with a
/// positive denominator, which is exactly the canonical form the rest of the
/// crate relies on for decidable equality.
pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders without a denominator when the value is an integer.
pub fn rat_display(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_negative(r: &Rat) -> bool {
    r.numer().is_negative()
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r, rat(-2, 3));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(rat_display(&r), "-2/3");
        assert_eq!(rat_display(&rat(6, 3)), "2");
        assert_eq!(rat_display(&rat_int(0)), "0");
    }
}
