//! A small recursive-descent reader for polynomial text such as
//! `-2a^2k^2b + 6ab^4k^3` or `(a + b)(ak^2 + k)/3`. Juxtaposition means
//! multiplication; division is only allowed by nonzero constants.

use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::{MPoly, Var};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("unexpected `{found}` at byte {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input")]
    Eof,
    #[error("division by a non-constant or zero at byte {0}")]
    BadDivisor(usize),
    #[error("exponent too large at byte {0}")]
    Exponent(usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParsePolyError {
        match self.src.get(self.pos) {
            Some(&c) => ParsePolyError::Unexpected {
                pos: self.pos,
                found: c as char,
            },
            None => ParsePolyError::Eof,
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParsePolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let divisor = self.power()?;
                    let c = match divisor.terms().collect::<Vec<_>>().as_slice() {
                        [(m, c)] if **m == super::Monomial::ONE => (*c).clone(),
                        _ => return Err(ParsePolyError::BadDivisor(at)),
                    };
                    acc = acc.scale(&(Rational::from_integer(1.into()) / c));
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let at = self.pos;
            let digits = self.digits().ok_or_else(|| self.unexpected())?;
            let e: u32 = digits.parse().map_err(|_| ParsePolyError::Exponent(at))?;
            if e > 64 {
                return Err(ParsePolyError::Exponent(at));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<MPoly, ParsePolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'a') => self.variable(Var::A),
            Some(b'b') => self.variable(Var::B),
            Some(b'k') => self.variable(Var::K),
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().unwrap();
                let n = BigInt::from_str(digits).expect("ascii digits");
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn variable(&mut self, v: Var) -> Result<MPoly, ParsePolyError> {
        self.pos += 1;
        Ok(MPoly::var(v))
    }
}

impl FromStr for MPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.replace('−', "-").replace('×', "*");
        let mut parser = Parser {
            src: normalized.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        if parser.peek().is_some() {
            return Err(parser.unexpected());
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::{int, rat};

    #[test]
    fn juxtaposition_and_powers() {
        let p: MPoly = "-2a^2k^2b + 6ab^4k^3".parse().unwrap();
        assert_eq!(p.coefficient(&Monomial::new(2, 1, 2)), int(-2));
        assert_eq!(p.coefficient(&Monomial::new(1, 4, 3)), int(6));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn parentheses_and_division() {
        let p: MPoly = "(a + b)(a - b)/4".parse().unwrap();
        assert_eq!(p, "a^2/4 - b^2/4".parse().unwrap());
        assert_eq!(p.coefficient(&Monomial::new(2, 0, 0)), rat(1, 4));
        let q: MPoly = "2(k+1)^2".parse().unwrap();
        assert_eq!(q.eval_ints(0, 0, 1), int(8));
    }

    #[test]
    fn unicode_minus() {
        let p: MPoly = "a − 1".parse().unwrap();
        assert_eq!(p, "a - 1".parse().unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!("a +".parse::<MPoly>(), Err(ParsePolyError::Eof));
        assert!(matches!(
            "a / b".parse::<MPoly>(),
            Err(ParsePolyError::BadDivisor(_))
        ));
        assert!(matches!(
            "a / 0".parse::<MPoly>(),
            Err(ParsePolyError::BadDivisor(_))
        ));
        assert!(matches!(
            "x + 1".parse::<MPoly>(),
            Err(ParsePolyError::Unexpected { .. })
        ));
        assert!(matches!(
            "(a + 1".parse::<MPoly>(),
            Err(ParsePolyError::Eof)
        ));
    }
}
