//! Text grammar for polynomials.
//!
//! Variables are `x1..xN`; literals are integers or rationals `a/b`;
//! operators `+ - * ^` have the usual precedence and whitespace is
//! insignificant. `serialize` emits terms in descending graded-lexicographic
//! order, so `parse(serialize(p)) == p` whenever `p` uses its highest
//! variable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::poly::Poly;
use crate::scalar::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: {}",
            self.position, self.message
        )
    }
}

impl core::error::Error for ParseError {}

/// Parses an expression; the variable count is the highest index mentioned.
pub fn parse(text: &str) -> Result<Poly, ParseError> {
    let n = scan_max_var(text)?;
    parse_with_vars(text, n)
}

/// Parses an expression in a fixed ambient variable count.
pub fn parse_with_vars(text: &str, n: usize) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(poly)
}

fn scan_max_var(text: &str) -> Result<usize, ParseError> {
    let bytes = text.as_bytes();
    let mut max = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(ParseError {
                    position: i,
                    message: String::from("variable name needs an index, e.g. x1"),
                });
            }
            let idx: usize = core::str::from_utf8(&bytes[start..j])
                .expect("digits are ascii")
                .parse()
                .map_err(|_| ParseError {
                    position: start,
                    message: String::from("variable index too large"),
                })?;
            if idx == 0 {
                return Err(ParseError {
                    position: start,
                    message: String::from("variable indices start at x1"),
                });
            }
            max = max.max(idx);
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(max)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: String::from(message),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let f = self.factor()?;
                Ok(-&f)
            }
            _ => {
                let base = self.base()?;
                if let Some(b'^') = self.peek() {
                    self.pos += 1;
                    let e = self.uint()?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.uint()? as usize;
                if idx == 0 || idx > self.n {
                    return Err(self.err("variable index out of range"));
                }
                Ok(Poly::var(self.n, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if let Some(b'/') = self.peek() {
                    self.pos += 1;
                    let pos_before = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        self.pos = pos_before;
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Poly::constant(self.n, Rational::new(num, den)))
                } else {
                    Ok(Poly::constant(self.n, Rational::from_integer(num)))
                }
            }
            Some(_) => Err(self.err("expected a number, variable or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).expect("digits are ascii");
        Ok(s.parse().expect("digit string parses"))
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| ParseError {
                position: start,
                message: String::from("exponent too large"),
            })
    }
}

use num_traits::Zero;

/// Canonical text form: terms in descending graded-lexicographic order.
pub fn serialize(p: &Poly) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let terms: Vec<_> = p.terms().collect();
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        let mut vars = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !vars.is_empty() {
                vars.push('*');
            }
            if e == 1 {
                vars.push_str(&format!("x{}", i + 1));
            } else {
                vars.push_str(&format!("x{}^{}", i + 1, e));
            }
        }
        let coeff_str = if mag.denom().is_one() {
            format!("{}", mag.numer())
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        if vars.is_empty() {
            out.push_str(&coeff_str);
        } else if mag == rat(1) {
            out.push_str(&vars);
        } else {
            out.push_str(&coeff_str);
            out.push('*');
            out.push_str(&vars);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use alloc::vec;

    #[test]
    fn parses_paper_example() {
        let p = parse("2*x1^3 + 12*x1*x2^2").unwrap();
        let want = Poly::from_terms(2, [(vec![3, 0], rat(2)), (vec![1, 2], rat(12))]).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn parses_zero_and_cancellation() {
        assert!(parse("0").unwrap().is_zero());
        assert!(parse("x1^2*x2 - x1^2*x2").unwrap().is_zero());
    }

    #[test]
    fn rational_literals_and_parens() {
        let p = parse("1/2*(x1 + x2)^2 - x1*x2").unwrap();
        assert_eq!(p.coeff(&[2, 0]), ratio(1, 2));
        assert_eq!(p.coeff(&[0, 2]), ratio(1, 2));
        assert_eq!(p.coeff(&[1, 1]), rat(0));
    }

    #[test]
    fn unary_minus() {
        let p = parse("-x1^3 + 2*x1^3").unwrap();
        assert_eq!(p.coeff(&[3]), rat(1));
    }

    #[test]
    fn error_positions() {
        let e = parse("2*x1^3 + @").unwrap_err();
        assert_eq!(e.position, 9);

        let e = parse("x0 + 1").unwrap_err();
        assert!(e.message.contains("start at x1"));

        let e = parse("x1 +").unwrap_err();
        assert_eq!(e.position, 4);

        assert!(parse("1/0").is_err());
        assert!(parse("(x1 + x2").is_err());
    }

    #[test]
    fn serialize_matches_expected_form() {
        let p = Poly::from_terms(2, [(vec![3, 0], rat(2)), (vec![1, 2], rat(12))]).unwrap();
        assert_eq!(serialize(&p), "2*x1^3 + 12*x1*x2^2");
        assert_eq!(serialize(&Poly::zero(3)), "0");

        let q = Poly::from_terms(2, [(vec![1, 1], rat(-1)), (vec![0, 2], ratio(1, 2))]).unwrap();
        assert_eq!(serialize(&q), "-x1*x2 + 1/2*x2^2");
    }

    #[test]
    fn round_trip() {
        let polys = [
            Poly::p_d(3, 4),
            Poly::from_terms(2, [(vec![3, 0], rat(2)), (vec![1, 2], rat(12))]).unwrap(),
            Poly::from_terms(2, [(vec![2, 1], ratio(-7, 3)), (vec![0, 3], rat(5))]).unwrap(),
        ];
        for p in polys {
            assert_eq!(parse(&serialize(&p)).unwrap(), p);
        }
    }

    #[test]
    fn oversized_exponents_are_rejected() {
        let e = parse("x1^99999999999999999999").unwrap_err();
        assert!(e.message.contains("exponent too large"));
        // big coefficients are fine, exponents are the only bounded part
        let p = parse("123456789012345678901234567890*x1^3").unwrap();
        assert!(!p.is_zero());
    }

    #[test]
    fn whitespace_and_nesting() {
        let p = parse("  ( ( x1 +x2 ) ^ 2 ) * (x1 - x2)\t").unwrap();
        assert_eq!(p.coeff(&[3, 0]), rat(1));
        assert_eq!(p.coeff(&[0, 3]), rat(-1));
        assert_eq!(p.coeff(&[2, 1]), rat(1));
        // multi-digit variable indices
        let q = parse("x12^2").unwrap();
        assert_eq!(q.num_vars(), 12);
    }
}
