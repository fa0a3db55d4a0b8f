//! Exact rational scalars.
//!
//! `Rational` is the field element for the whole decision path. Values are
//! always stored reduced with a positive denominator, which keeps bit growth
//! during Gaussian elimination and interpolation under control.

use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Total bit size of a rational: bits of |numerator| plus bits of the
/// denominator. Used by the bit-growth instrumentation in tests.
pub fn bit_size(x: &Rational) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}

/// Parses `"a"` or `"a/b"` with optional sign into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders a rational as `"a"` or `"a/b"`.
pub fn format_rational(x: &Rational) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    if x.denom().is_one() {
        let _ = write!(out, "{}", x.numer());
    } else {
        let _ = write!(out, "{}/{}", x.numer(), x.denom());
    }
    out
}
