//! Sparse multivariate polynomials over exact rationals.
//!
//! Variables are indexed `0..n` in the API; the text grammar in [`crate::expr`]
//! names them `x1..xN`. Terms are kept in a map with graded-lexicographic key
//! order so serialization is canonical, and zero coefficients are never stored.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::scalar::{rat, Rational};

/// Exponent vector of a single monomial, fixed length = ambient variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn constant(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    /// x_i as a monomial in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exponents }
    }
}

/// Graded lexicographic: total degree first, then lexicographic on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Point or exponent-vector length differs from the variable count.
    DimensionMismatch { expected: usize, got: usize },
    /// A declared-homogeneous polynomial contains a monomial of the wrong degree.
    NotHomogeneous { declared: u32, found: u32 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "dimension mismatch: expected {expected} variables, got {got}"
                )
            }
            PolyError::NotHomogeneous { declared, found } => {
                write!(
                    f,
                    "not homogeneous: declared degree {declared}, found monomial of degree {found}"
                )
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Sparse multivariate polynomial with `Rational` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(Monomial::constant(n), c);
        p
    }

    /// The variable x_i as a polynomial in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(Monomial::var(n, i), rat(1));
        p
    }

    /// Builds a polynomial from (exponent vector, coefficient) pairs.
    /// Repeated monomials accumulate; zero coefficients are dropped.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(n);
        for (exps, coeff) in terms {
            if exps.len() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    got: exps.len(),
                });
            }
            p.add_term(Monomial::new(exps), coeff);
        }
        Ok(p)
    }

    /// Like [`Poly::from_terms`] but validates that every monomial has total
    /// degree `d`. The zero polynomial is homogeneous of every degree.
    pub fn homogeneous<I>(n: usize, d: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let p = Poly::from_terms(n, terms)?;
        p.check_homogeneous(d)?;
        Ok(p)
    }

    /// Errors unless every stored monomial has total degree `d`.
    pub fn check_homogeneous(&self, d: u32) -> Result<(), PolyError> {
        for m in self.terms.keys() {
            if m.degree() != d {
                return Err(PolyError::NotHomogeneous {
                    declared: d,
                    found: m.degree(),
                });
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` iff the polynomial is nonzero and every monomial has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.check_homogeneous(d).ok().map(|_| d)
    }

    /// Terms in graded-lexicographic key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        debug_assert_eq!(exps.len(), self.n);
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.clone() * c))
            .collect();
        Poly { n: self.n, terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.n, rat(1));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// ∂/∂x_i.
    pub fn partial_derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c.clone() * rat(e as i64));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut acc = rat(0);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating evaluation at a complex point (used by the numeric
    /// reconstruction stage only; the decision path never calls this).
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &e) in point.iter().zip(m.exponents()) {
                term *= x.powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Explicit expansion of `p(Ax)`: substitutes `x_i ← Σ_j A[i][j]·x_j`.
    /// Homogeneity of each input monomial is preserved.
    pub fn substitute_linear(&self, a: &Matrix) -> Result<Poly, PolyError> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: a.rows(),
            });
        }
        let forms: Vec<Poly> = (0..self.n)
            .map(|i| {
                let mut f = Poly::zero(self.n);
                for j in 0..self.n {
                    f.add_term(Monomial::var(self.n, j), a.get(i, j).clone());
                }
                f
            })
            .collect();
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(self.n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &forms[i].pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Same polynomial viewed in `n >= self.n` variables (trailing variables unused).
    pub fn extended(&self, n: usize) -> Poly {
        assert!(n >= self.n, "extended: cannot shrink variable count");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                exps.resize(n, 0);
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Poly { n, terms }
    }

    /// Sum of `coeffs[i] * x_i^d`: the model polynomial the decision pipeline
    /// tests equivalence against.
    pub fn power_sum(n: usize, d: u32, coeffs: &[Rational]) -> Poly {
        assert_eq!(coeffs.len(), n);
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[i] = d;
            p.add_term(Monomial::new(exps), c.clone());
        }
        p
    }

    /// `x_1^d + ... + x_n^d`.
    pub fn p_d(n: usize, d: u32) -> Poly {
        Poly::power_sum(n, d, &vec![rat(1); n])
    }
}

/// Evaluation plan with cleared denominators: at integer points the whole
/// computation runs over `BigInt` with per-variable power tables, which is
/// what the blackbox cost model exercises the most.
#[derive(Clone, Debug)]
pub(crate) struct EvalPlan {
    n: usize,
    denom: num_bigint::BigInt,
    terms: Vec<(Vec<u32>, num_bigint::BigInt)>,
    max_exp: Vec<u32>,
}

impl EvalPlan {
    pub(crate) fn new(p: &Poly) -> Self {
        use num_integer::Integer;
        use num_traits::One;
        let n = p.num_vars();
        let mut denom = num_bigint::BigInt::one();
        for (_, c) in p.terms() {
            denom = denom.lcm(c.denom());
        }
        let mut max_exp = vec![0u32; n];
        let terms = p
            .terms()
            .map(|(m, c)| {
                for (i, &e) in m.exponents().iter().enumerate() {
                    max_exp[i] = max_exp[i].max(e);
                }
                (m.exponents().to_vec(), c.numer() * (&denom / c.denom()))
            })
            .collect();
        EvalPlan {
            n,
            denom,
            terms,
            max_exp,
        }
    }

    pub(crate) fn eval(&self, point: &[Rational]) -> Rational {
        use num_traits::One;
        debug_assert_eq!(point.len(), self.n);
        if point.iter().all(|x| x.denom().is_one()) {
            let powers: Vec<Vec<num_bigint::BigInt>> = point
                .iter()
                .zip(&self.max_exp)
                .map(|(x, &me)| {
                    let mut row = Vec::with_capacity(me as usize + 1);
                    row.push(num_bigint::BigInt::one());
                    for e in 1..=me as usize {
                        let next = &row[e - 1] * x.numer();
                        row.push(next);
                    }
                    row
                })
                .collect();
            let mut acc: num_bigint::BigInt = num_traits::Zero::zero();
            for (exps, coeff) in &self.terms {
                let mut term = coeff.clone();
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        term *= &powers[i][e as usize];
                    }
                }
                acc += term;
            }
            return Rational::new(acc, self.denom.clone());
        }
        let mut acc = Rational::from_integer(num_traits::Zero::zero());
        for (exps, coeff) in &self.terms {
            let mut term = Rational::from_integer(coeff.clone());
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc / Rational::from_integer(self.denom.clone())
    }
}

impl core::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "polynomial variable counts differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl core::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "polynomial variable counts differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Poly { n: self.n, terms }
    }
}

impl core::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "polynomial variable counts differ");
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        out
    }
}
