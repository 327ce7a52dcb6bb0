//! The scalar type that game values, dividends and matrix entries live in.
//!
//! All algorithms in this crate are written against the [`Scalar`] trait, so
//! they run over any field-like type. The crate-level default is [`Rat`]
//! (arbitrary-precision rationals): every identity this library checks is an
//! exact statement, and rationals let the checks be exact equalities instead
//! of tolerance comparisons. `f32`/`f64` satisfy the bounds as well and can be
//! substituted where approximate arithmetic is acceptable.

use std::fmt;
use std::str::FromStr;

use num_traits::{FromPrimitive, NumAssign, Signed};

/// Field-like scalar: the element type of games, allocations and value
/// matrices.
pub trait Scalar:
    NumAssign + Signed + FromPrimitive + PartialOrd + Clone + fmt::Debug + fmt::Display
{
}

impl<T> Scalar for T where
    T: NumAssign + Signed + FromPrimitive + PartialOrd + Clone + fmt::Debug + fmt::Display
{
}

/// Exact rational scalar, the default for every container in this crate.
pub type Rat = num_rational::BigRational;

/// `num / den` in any scalar type. Panics if `den` is zero.
pub fn fraction<S: Scalar>(num: i64, den: i64) -> S {
    assert!(den != 0, "fraction with zero denominator");
    S::from_i64(num).expect("numerator representable") / S::from_i64(den).expect("denominator representable")
}

/// Shorthand for an exact rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rat {
    fraction(num, den)
}

/// Parses `p/q` or a bare integer into an exact rational.
///
/// This is the entry format used by every file the CLI reads; `Rat`'s
/// `Display` is the matching output format (reduced, positive denominator,
/// bare integer when the denominator is 1).
pub fn parse_rat(token: &str) -> Result<Rat, String> {
    let t = token.trim();
    Rat::from_str(t).map_err(|_| {
        let zero_den = t
            .split_once('/')
            .and_then(|(_, d)| num_bigint::BigInt::from_str(d.trim()).ok())
            .map_or(false, |d| num_traits::Zero::is_zero(&d));
        if zero_den {
            format!("zero denominator in `{}`", t)
        } else {
            format!("invalid rational `{}`", t)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/6", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // unreduced and whitespace-padded input normalizes
        assert_eq!(parse_rat(" 4/6 ").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("4/6").unwrap().to_string(), "2/3");
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("one").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").unwrap_err().contains("zero denominator"));
    }

    #[test]
    fn fraction_works_for_floats_too() {
        let x: f64 = fraction(1, 4);
        assert_eq!(x, 0.25);
    }
}
