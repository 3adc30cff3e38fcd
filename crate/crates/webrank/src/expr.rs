//! Recursive-descent parser for polynomial input expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := 'x' | 'y' | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Integer and rational literals are parsed exactly; anything outside the
//! grammar is rejected with a byte position.

use num::{BigInt, BigRational, One};

use crate::poly::Poly2;
use crate::{Error, Result};

pub fn parse_expression(text: &str) -> Result<Poly2> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly2> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly2> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            if e > 64 {
                return Err(self.error("exponent too large"));
            }
            self.skip_ws();
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly2> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                self.skip_ws();
                Ok(Poly2::variable(0))
            }
            Some(b'y') => {
                self.pos += 1;
                self.skip_ws();
                Ok(Poly2::variable(1))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let q = self.rational()?;
                Ok(Poly2::constant(q))
            }
            _ => Err(self.error("expected 'x', 'y', a rational literal or '('")),
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.int()?;
        let den = if self.eat(b'/') {
            let d = self.uint()?;
            self.skip_ws();
            if d == 0 {
                return Err(self.error("zero denominator"));
            }
            BigInt::from(d)
        } else {
            BigInt::one()
        };
        self.skip_ws();
        Ok(BigRational::new(num, den))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.digits()?;
        let v: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<u64> {
        let digits = self.digits()?;
        digits.parse().map_err(|_| self.error("integer out of range"))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap().to_string())
    }
}

/// Parse a rational literal on its own (JSON `"p/q"` fields).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let mut p = Parser {
        bytes: text.trim().as_bytes(),
        pos: 0,
    };
    let q = p.rational()?;
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input in rational"));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_sum_of_squares() {
        let p = parse_expression("x^2+y^2").unwrap();
        let mut expect = Poly2::zero();
        expect.add_term(2, 0, q(1, 1));
        expect.add_term(0, 2, q(1, 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn parses_difference_of_squares() {
        let p = parse_expression("(x+y)*(x-y)").unwrap();
        let mut expect = Poly2::zero();
        expect.add_term(2, 0, q(1, 1));
        expect.add_term(0, 2, q(-1, 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn parses_rational_coefficients() {
        let p = parse_expression("3/2*x*y - 1").unwrap();
        let mut expect = Poly2::zero();
        expect.add_term(1, 1, q(3, 2));
        expect.add_term(0, 0, q(-1, 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_expression(" x ^ 2 + 2 * x * y ").unwrap(),
            parse_expression("x^2+2*x*y").unwrap()
        );
    }

    #[test]
    fn reports_error_positions() {
        match parse_expression("x^2 + $") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_expression("x**y").is_err());
        assert!(parse_expression("z + 1").is_err());
        assert!(parse_expression("1/0").is_err());
    }

    #[test]
    fn parses_negative_literals_in_context() {
        let p = parse_expression("0-x").unwrap();
        let m = parse_expression("-1*x").unwrap();
        assert_eq!(p, m);
        assert_eq!(parse_rational("-7/3").unwrap(), q(-7, 3));
        assert!(parse_expression("").is_err());
    }

    #[test]
    fn constant_zero_expression() {
        assert!(parse_expression("x-x").unwrap().is_zero());
    }
}
