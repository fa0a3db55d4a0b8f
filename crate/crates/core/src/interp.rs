//! Univariate interpolation and the coefficient / partial-derivative reads
//! that pull slice entries out of the evaluation blackbox.
//!
//! A homogeneous degree-d polynomial restricted to a line `t·e_i + w` is a
//! univariate polynomial of degree at most d, so d+1 samples determine it
//! exactly. Interpolation nodes are always 0..d, which keeps the rational
//! bit growth modest.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::oracle::{Oracle, OracleError};
use crate::scalar::{rat, Rational};
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterpError {
    DuplicatePoints,
    LengthMismatch {
        points: usize,
        values: usize,
    },
    /// Coefficient extraction needs degree at least 3.
    DegreeTooSmall {
        degree: u32,
    },
    IndexOutOfRange {
        index: usize,
        vars: usize,
    },
    Oracle(OracleError),
}

impl fmt::Display for InterpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpError::DuplicatePoints => {
                write!(f, "interpolation points must be pairwise distinct")
            }
            InterpError::LengthMismatch { points, values } => {
                write!(f, "{points} points but {values} values")
            }
            InterpError::DegreeTooSmall { degree } => {
                write!(f, "coefficient extraction needs degree >= 3, got {degree}")
            }
            InterpError::IndexOutOfRange { index, vars } => {
                write!(
                    f,
                    "variable index {index} out of range for {vars} variables"
                )
            }
            InterpError::Oracle(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for InterpError {}

impl From<OracleError> for InterpError {
    fn from(e: OracleError) -> Self {
        InterpError::Oracle(e)
    }
}

/// Unique polynomial of degree < `points.len()` through the given pairs,
/// by Lagrange evaluation over exact rationals.
pub fn interpolate(points: &[Rational], values: &[Rational]) -> Result<UniPoly, InterpError> {
    if points.len() != values.len() {
        return Err(InterpError::LengthMismatch {
            points: points.len(),
            values: values.len(),
        });
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(InterpError::DuplicatePoints);
            }
        }
    }
    let mut acc = UniPoly::zero();
    for (i, yi) in values.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(rat(1));
        let mut denom = rat(1);
        for (j, xj) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            basis = &basis * &UniPoly::from_coeffs(vec![-xj.clone(), rat(1)]);
            denom *= points[i].clone() - xj;
        }
        acc = &acc + &basis.scale(&(yi.clone() / denom));
    }
    Ok(acc)
}

/// Samples the oracle along the line `t ↦ t·e_i + w` at t = 0..d and
/// interpolates the univariate restriction.
fn restrict_to_line(o: &Oracle, i: usize, w: &[Rational]) -> Result<UniPoly, InterpError> {
    let d = o.degree() as usize;
    let mut points = Vec::with_capacity(d + 1);
    let mut values = Vec::with_capacity(d + 1);
    let mut point = w.to_vec();
    for t in 0..=d {
        point[i] = w[i].clone() + rat(t as i64);
        points.push(rat(t as i64));
        values.push(o.eval(&point)?);
    }
    interpolate(&points, &values)
}

fn unit_point(n: usize, ones: &[usize]) -> Vec<Rational> {
    let mut v = vec![rat(0); n];
    for &i in ones {
        v[i] = rat(1);
    }
    v
}

/// Coefficient of the monomial `x_i^{d-2} · x_j · x_k` of the oracle's
/// polynomial, read through at most three univariate interpolations:
/// a single point when i = j = k, a line through `e_j` (or `e_k`) when
/// exactly one of j, k equals i, and the distinct-index correction
/// `c_{jk} = c - c_{jj} - c_{kk}` on the line through `e_j + e_k` otherwise.
pub fn coeff_xi_pow(o: &Oracle, i: usize, j: usize, k: usize) -> Result<Rational, InterpError> {
    let d = o.degree();
    if d < 3 {
        return Err(InterpError::DegreeTooSmall { degree: d });
    }
    let n = o.num_vars();
    for &idx in &[i, j, k] {
        if idx >= n {
            return Err(InterpError::IndexOutOfRange {
                index: idx,
                vars: n,
            });
        }
    }
    let d = d as usize;
    if i == j && i == k {
        // coefficient of x_i^d
        return Ok(o.eval(&unit_point(n, &[i]))?);
    }
    if j == i || k == i {
        // coefficient of x_i^{d-1} x_m
        let m = if j == i { k } else { j };
        let restricted = restrict_to_line(o, i, &unit_point(n, &[m]))?;
        return Ok(restricted.coeff(d - 1));
    }
    if j == k {
        // coefficient of x_i^{d-2} x_j^2
        let restricted = restrict_to_line(o, i, &unit_point(n, &[j]))?;
        return Ok(restricted.coeff(d - 2));
    }
    // distinct i, j, k: on the line through e_j + e_k the t^{d-2} coefficient
    // collects x_j^2, x_j x_k and x_k^2 contributions
    let combined = restrict_to_line(o, i, &unit_point(n, &[j, k]))?.coeff(d - 2);
    let jj = restrict_to_line(o, i, &unit_point(n, &[j]))?.coeff(d - 2);
    let kk = restrict_to_line(o, i, &unit_point(n, &[k]))?.coeff(d - 2);
    Ok(combined - jj - kk)
}

/// Exact `∂o/∂x_i` at a point: interpolate the univariate restriction along
/// x_i, differentiate it, evaluate at the point's i-th coordinate.
pub fn partial_eval(o: &Oracle, i: usize, point: &[Rational]) -> Result<Rational, InterpError> {
    let n = o.num_vars();
    if point.len() != n {
        return Err(InterpError::Oracle(OracleError::DimensionMismatch {
            expected: n,
            got: point.len(),
        }));
    }
    if i >= n {
        return Err(InterpError::IndexOutOfRange { index: i, vars: n });
    }
    let d = o.degree() as usize;
    let mut points = Vec::with_capacity(d + 1);
    let mut values = Vec::with_capacity(d + 1);
    let mut q = point.to_vec();
    for t in 0..=d {
        q[i] = rat(t as i64);
        points.push(rat(t as i64));
        values.push(o.eval(&q)?);
    }
    let restricted = interpolate(&points, &values)?;
    Ok(restricted.derivative().eval(&point[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn paper_oracle() -> Oracle {
        let p = Poly::from_terms(2, [(vec![3, 0], rat(2)), (vec![1, 2], rat(12))]).unwrap();
        Oracle::from_poly(&p).unwrap()
    }

    #[test]
    fn interpolate_examples() {
        let c = interpolate(&[rat(0), rat(1)], &[rat(1), rat(1)]).unwrap();
        assert_eq!(c, UniPoly::constant(rat(1)));

        let cube = interpolate(
            &[rat(0), rat(1), rat(2), rat(3)],
            &[rat(0), rat(1), rat(8), rat(27)],
        )
        .unwrap();
        assert_eq!(cube, UniPoly::monomial(3, rat(1)));

        let line = interpolate(&[rat(0), rat(1)], &[rat(3), rat(5)]).unwrap();
        assert_eq!(line.coeffs(), &[rat(3), rat(2)]);
    }

    #[test]
    fn interpolate_rejects_duplicates() {
        assert_eq!(
            interpolate(&[rat(1), rat(1)], &[rat(0), rat(0)]),
            Err(InterpError::DuplicatePoints)
        );
    }

    #[test]
    fn coeff_extraction_examples() {
        let o = paper_oracle();
        assert_eq!(coeff_xi_pow(&o, 0, 1, 1).unwrap(), rat(12));
        assert_eq!(coeff_xi_pow(&o, 0, 0, 0).unwrap(), rat(2));

        let cube =
            Oracle::from_poly(&Poly::homogeneous(2, 3, [(vec![3, 0], rat(1))]).unwrap()).unwrap();
        assert_eq!(coeff_xi_pow(&cube, 0, 0, 0).unwrap(), rat(1));

        let sym = Oracle::from_poly(&Poly::homogeneous(3, 3, [(vec![1, 1, 1], rat(6))]).unwrap())
            .unwrap();
        assert_eq!(coeff_xi_pow(&sym, 0, 1, 2).unwrap(), rat(6));
    }

    #[test]
    fn coeff_extraction_rejects_low_degree() {
        let q =
            Oracle::from_poly(&Poly::homogeneous(2, 2, [(vec![1, 1], rat(1))]).unwrap()).unwrap();
        assert!(matches!(
            coeff_xi_pow(&q, 0, 1, 1),
            Err(InterpError::DegreeTooSmall { degree: 2 })
        ));
    }

    #[test]
    fn coeff_extraction_matches_dense_reads() {
        // every (i,j,k) against the coefficient read straight off the Poly
        let p = Poly::from_terms(
            3,
            [
                (vec![4, 0, 0], rat(3)),
                (vec![2, 1, 1], rat(-5)),
                (vec![2, 2, 0], rat(7)),
                (vec![1, 1, 2], rat(2)),
                (vec![0, 0, 4], rat(1)),
            ],
        )
        .unwrap();
        let o = Oracle::from_poly(&p).unwrap();
        let d = 4u32;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut exps = vec![0u32; 3];
                    exps[i] += d - 2;
                    exps[j] += 1;
                    exps[k] += 1;
                    assert_eq!(
                        coeff_xi_pow(&o, i, j, k).unwrap(),
                        p.coeff(&exps),
                        "mismatch at ({i},{j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn coeff_extraction_call_budget() {
        let p = Poly::p_d(4, 5);
        let o = Oracle::from_poly(&p).unwrap();
        let before = o.calls();
        coeff_xi_pow(&o, 0, 1, 2).unwrap();
        let spent = o.calls() - before;
        assert!(spent <= 3 * (5 + 1), "spent {spent} calls");
    }

    #[test]
    fn partial_eval_examples() {
        let cube =
            Oracle::from_poly(&Poly::homogeneous(1, 3, [(vec![3], rat(1))]).unwrap()).unwrap();
        assert_eq!(partial_eval(&cube, 0, &[rat(2)]).unwrap(), rat(12));

        let p =
            Oracle::from_poly(&Poly::homogeneous(2, 3, [(vec![2, 1], rat(1))]).unwrap()).unwrap();
        assert_eq!(partial_eval(&p, 1, &[rat(1), rat(5)]).unwrap(), rat(1));

        let o = paper_oracle();
        assert_eq!(partial_eval(&o, 0, &[rat(1), rat(1)]).unwrap(), rat(18));
    }

    #[test]
    fn partial_eval_matches_symbolic_derivative() {
        let p = Poly::from_terms(
            3,
            [
                (vec![3, 1, 0], rat(2)),
                (vec![1, 1, 2], rat(-3)),
                (vec![0, 4, 0], rat(1)),
                (vec![2, 0, 2], rat(5)),
            ],
        )
        .unwrap();
        let o = Oracle::from_poly(&p).unwrap();
        // fixed pseudo-random sample of points
        let pts: Vec<Vec<Rational>> = (0..20)
            .map(|s: i64| {
                vec![
                    rat((s * 7 + 1) % 11 - 5),
                    rat((s * 3 + 2) % 9 - 4),
                    rat((s * 5 + 3) % 13 - 6),
                ]
            })
            .collect();
        for i in 0..3 {
            let dp = p.partial_derivative(i);
            for pt in &pts {
                assert_eq!(partial_eval(&o, i, pt).unwrap(), dp.eval(pt).unwrap());
            }
        }
    }
}
