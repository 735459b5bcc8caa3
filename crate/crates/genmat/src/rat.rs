//! Exact rational scalars.
//!
//! The coefficient field is the rationals, represented by
//! [`num_rational::BigRational`]: always reduced, denominator positive,
//! arbitrary precision. This module adds the small constructors and the
//! `p/q` text round-trip the rest of the crate leans on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`, reduced, denominator positive.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// `1/n!`.
pub fn inv_factorial(n: u32) -> Rat {
    factorial(n).recip()
}

/// Parses `p` or `p/q` with an optional leading sign. Returns `None` on
/// malformed input or a zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Canonical `p` or `p/q` form (denominator omitted when it is 1).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True for rationals with numerator 1 after sign normalization, used by
/// printers to decide whether a coefficient may be elided.
pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// True for `-1`.
pub fn is_minus_one(r: &Rat) -> bool {
    r.is_negative() && (-r).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign_normalization() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(format_rat(&rat(1, -2)), "-1/2");
        assert_eq!(format_rat(&rat_int(7)), "7");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
        assert_eq!(inv_factorial(4), rat(1, 24));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }
}
