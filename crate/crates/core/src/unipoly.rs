//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree order; the leading coefficient
//! is nonzero unless the polynomial is zero (empty vector).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::scalar::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniPolyError {
    /// Operation undefined for the zero polynomial (division, square-free part, ...).
    ZeroPolynomial,
}

impl fmt::Display for UniPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniPolyError::ZeroPolynomial => {
                write!(f, "operation undefined for the zero polynomial")
            }
        }
    }
}

impl core::error::Error for UniPolyError {}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// From ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// `c * t^d`.
    pub fn monomial(d: usize, c: Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![rat(0); d + 1];
        coeffs[d] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^d` (zero if beyond the stored degree).
    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * rat(i as i64))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => UniPoly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &UniPoly) -> Result<(UniPoly, UniPoly), UniPolyError> {
        let dlc = div.leading_coeff().ok_or(UniPolyError::ZeroPolynomial)?;
        let dd = div.degree().expect("nonzero divisor has a degree");
        let mut rem = self.coeffs.clone();
        if rem.len() < div.coeffs.len() {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![rat(0); rem.len() - div.coeffs.len() + 1];
        while rem.len() >= div.coeffs.len() {
            let k = rem.len() - div.coeffs.len();
            let factor = rem.last().expect("nonempty").clone() / dlc;
            quot[k] = factor.clone();
            for i in 0..=dd {
                let delta = factor.clone() * &div.coeffs[i];
                rem[k + i] -= delta;
            }
            // the top coefficient cancels exactly
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly { coeffs: rem }))
    }

    /// Monic greatest common divisor, by a primitive pseudo-remainder
    /// sequence over the integers (plain rational Euclid blows up
    /// coefficient sizes).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = intpoly::from_unipoly(self);
        let mut b = intpoly::from_unipoly(other);
        while !b.is_empty() {
            let r = intpoly::content_free(intpoly::prem_positive(&a, &b));
            a = b;
            b = r;
        }
        intpoly::to_unipoly(&a).monic()
    }

    /// Scales so the coefficients are coprime integers; the sign of every
    /// coefficient is preserved (the scale factor is positive). Sturm chains
    /// rely on that.
    pub fn primitive(&self) -> UniPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let factor = Rational::new(den_lcm, num_gcd.abs());
        self.scale(&factor)
    }
}

/// Integer polynomial arithmetic on bare coefficient vectors (ascending,
/// trailing zeros trimmed, empty = zero). Backs the gcd and Sturm chains.
pub(crate) mod intpoly {
    use alloc::vec::Vec;

    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    use super::UniPoly;
    use crate::scalar::Rational;

    pub(crate) fn trim(v: &mut Vec<BigInt>) {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    }

    /// Primitive integer form of a rational polynomial; signs preserved.
    pub(crate) fn from_unipoly(p: &UniPoly) -> Vec<BigInt> {
        let prim = p.primitive();
        prim.coeffs().iter().map(|c| c.numer().clone()).collect()
    }

    pub(crate) fn to_unipoly(v: &[BigInt]) -> UniPoly {
        UniPoly::from_coeffs(
            v.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Divides by the positive content; signs preserved.
    pub(crate) fn content_free(mut v: Vec<BigInt>) -> Vec<BigInt> {
        trim(&mut v);
        let mut content: BigInt = Zero::zero();
        for c in &v {
            content = content.gcd(c);
        }
        if content.is_zero() || content.abs() == num_traits::One::one() {
            return v;
        }
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
        v
    }

    /// A positive-scalar multiple of `rem(a, b)`: synthetic division where
    /// the running remainder is scaled by |lc(b)| instead of divided, so no
    /// fractions appear and the sign sequence stays faithful.
    pub(crate) fn prem_positive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        assert!(!b.is_empty(), "pseudo-remainder by zero");
        // the remainder is invariant under scaling the divisor
        let negate_b = b.last().expect("nonzero").is_negative();
        let bb: Vec<BigInt> = if negate_b {
            b.iter().map(|c| -c).collect()
        } else {
            b.to_vec()
        };
        let lcb = bb.last().expect("nonzero").clone();
        let db = bb.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        while r.len() >= bb.len() && !r.is_empty() {
            let shift = r.len() - bb.len();
            let lead = r.last().expect("nonempty").clone();
            for c in r.iter_mut() {
                *c *= &lcb;
            }
            for (i, c) in bb.iter().enumerate() {
                let delta = &lead * c;
                r[shift + i] -= delta;
            }
            let _ = db;
            trim(&mut r);
        }
        r
    }

    pub(crate) fn derivative(v: &[BigInt]) -> Vec<BigInt> {
        if v.len() <= 1 {
            return Vec::new();
        }
        let mut out: Vec<BigInt> = v
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i as u64))
            .collect();
        trim(&mut out);
        out
    }
}

impl core::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![rat(0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl core::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl core::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl core::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn from_i64(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn leading_invariant() {
        let p = UniPoly::from_coeffs(vec![rat(1), rat(0), rat(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::from_coeffs(vec![rat(0)]).is_zero());
    }

    #[test]
    fn divrem_roundtrip() {
        // (t-1)^2 (t-2) divided by (t-1)
        let p = &(&from_i64(&[-1, 1]) * &from_i64(&[-1, 1])) * &from_i64(&[-2, 1]);
        let (q, r) = p.divrem(&from_i64(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, &from_i64(&[-1, 1]) * &from_i64(&[-2, 1]));

        let (q2, r2) = p.divrem(&from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(&(&q2 * &from_i64(&[0, 0, 1])) + &r2, p);
    }

    #[test]
    fn gcd_is_monic() {
        let p = &from_i64(&[-1, 1]) * &from_i64(&[-1, 1]); // (t-1)^2
        let q = &from_i64(&[-1, 1]) * &from_i64(&[-2, 1]); // (t-1)(t-2)
        let g = p.gcd(&q);
        assert_eq!(g, from_i64(&[-1, 1]));
        assert_eq!(from_i64(&[0]).gcd(&from_i64(&[3])), from_i64(&[1]));
    }

    #[test]
    fn eval_horner() {
        let p = from_i64(&[3, 2]); // 2t + 3
        assert_eq!(p.eval(&rat(0)), rat(3));
        assert_eq!(p.eval(&rat(5)), rat(13));
    }

    #[test]
    fn primitive_preserves_signs() {
        let p = UniPoly::from_coeffs(vec![ratio(-2, 3), ratio(4, 9)]);
        let q = p.primitive();
        assert_eq!(q.coeffs(), &[rat(-3), rat(2)]);
    }
}
