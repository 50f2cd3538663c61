//! Recursive-descent parser for polynomial input.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := integer ["/" integer] | var ["^" uint] | "(" expr ")" ["^" uint]
//! var    := "x" | "y" | "z"
//! ```
//!
//! Whitespace is insignificant; juxtaposition is not multiplication.

use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::field::Field;
use super::tripoly::{Monomial, TriPoly};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> Error {
        Error::SyntaxError { position: self.pos, expected: expected.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            core::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let d = self.digits().ok_or_else(|| self.err("unsigned integer exponent"))?;
        d.parse().map_err(|_| self.err("exponent that fits in 32 bits"))
    }

    fn expr(&mut self) -> Result<TriPoly> {
        let mut acc = TriPoly::zero(self.field);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TriPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TriPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("')', '+', '-' or '*'"));
                }
                if self.eat(b'^') {
                    Ok(inner.pow(self.exponent()?))
                } else {
                    Ok(inner)
                }
            }
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let v = (c - b'x') as usize;
                let e = if self.eat(b'^') { self.exponent()? } else { 1 };
                let mut m = Monomial::ONE;
                m.0[v] = e;
                Ok(TriPoly::term(self.field, self.field.one(), m))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                if self.eat(b'/') {
                    let den_pos = self.pos;
                    let den_str = self.digits().ok_or_else(|| self.err("integer denominator"))?;
                    let den: BigInt = den_str.parse().unwrap();
                    let c = self.field.from_ratio(&num, &den).ok_or(Error::CoefficientError {
                        position: den_pos.max(start),
                        denominator: String::from(den_str),
                    })?;
                    Ok(TriPoly::constant(self.field, c))
                } else {
                    Ok(TriPoly::constant(self.field, self.field.from_bigint(&num)))
                }
            }
            _ => Err(self.err("integer, variable (x, y, z) or '('")),
        }
    }
}

/// Parses `text` into a polynomial over `field`.
pub fn parse_poly(text: &str, field: &Field) -> Result<TriPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("'+', '-', '*' or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Elem;

    #[test]
    fn examples() {
        let f2 = Field::prime(2).unwrap();
        let f = parse_poly("x^2 + y^3", &f2).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff_of([2, 0, 0]), Elem::P(1));
        assert_eq!(f.coeff_of([0, 3, 0]), Elem::P(1));
        assert!(parse_poly("3*x - 3*x", &Field::rationals()).unwrap().is_zero());
        assert!(parse_poly("2*y^2*z", &f2).unwrap().is_zero());
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let q = Field::rationals();
        assert!(matches!(parse_poly("2x", &q), Err(Error::SyntaxError { position: 1, .. })));
        assert!(matches!(parse_poly("x y", &q), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_poly("", &q), Err(Error::SyntaxError { position: 0, .. })));
        assert!(matches!(parse_poly("x^", &q), Err(Error::SyntaxError { .. })));
    }

    #[test]
    fn coefficient_errors() {
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(parse_poly("x/3", &f3), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse_poly("1/6*x", &f3), Err(Error::CoefficientError { .. })));
        assert_eq!(parse_poly("1/2*x", &f3).unwrap().coeff_of([1, 0, 0]), Elem::P(2));
    }

    #[test]
    fn grouping_and_signs() {
        let q = Field::rationals();
        let f = parse_poly("-(x+y)^2 + 2*x*y", &q).unwrap();
        assert_eq!(f.format(), "-x^2 - y^2");
        let g = parse_poly(&f.format(), &q).unwrap();
        assert_eq!(f, g);
        let h = parse_poly("1/2*x - 3/4*y", &q).unwrap();
        assert_eq!(parse_poly(&h.format(), &q).unwrap(), h);
    }
}
