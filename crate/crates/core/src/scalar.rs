//! Exact rational scalars and small helpers shared by all modules.
//!
//! All arithmetic in this crate is exact; `Scalar` is a normalized
//! arbitrary-precision rational (gcd-reduced, positive denominator).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Exact rational number. Normalization (reduced, denominator > 0) is
/// maintained by the underlying representation.
pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Uniform random integer scalar in `[-bound, bound]`, excluding zero when
/// `nonzero` is set. Used for seeded sample points and genericity draws.
pub fn random_int_scalar<R: Rng>(rng: &mut R, bound: i64, nonzero: bool) -> Scalar {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 || !nonzero {
            return int(n);
        }
    }
}

/// Random small rational with numerator in `[-bound, bound]` and denominator
/// in `[1, bound]`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    ratio(n, d)
}

/// Renders a scalar as `a` or `a/b`.
pub fn render(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `a` or `a/b`.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// True when `s` is a (possibly negative) integer.
pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

/// Sign-normalized absolute value of the numerator, for content computations.
pub fn abs_numer(s: &Scalar) -> BigInt {
    s.numer().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_render_round_trip() {
        for text in ["0", "7", "-3", "2/3", "-11/4"] {
            let s = parse(text).unwrap();
            assert_eq!(render(&s), text);
        }
        assert_eq!(parse("4/6").map(|s| render(&s)).unwrap(), "2/3");
        assert!(parse("1/0").is_none());
    }

    #[test]
    fn normalization_invariants() {
        let s = ratio(-4, -6);
        assert_eq!(render(&s), "2/3");
        let z = int(0);
        assert!(z.numer().is_zero() && z.denom().is_one());
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(an in -1000i64..1000, ad in 1i64..50, bn in -1000i64..1000, bd in 1i64..50) {
            let a = ratio(an, ad);
            let b = ratio(bn, bd);
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn denominator_positive(an in -1000i64..1000, ad in 1i64..50) {
            let a = ratio(an, -ad);
            prop_assert!(a.denom() > &num_bigint::BigInt::from(0));
        }
    }
}
