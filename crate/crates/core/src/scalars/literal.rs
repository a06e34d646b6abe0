//! Text literals for field elements: sums of products of rationals and
//! powers of `z`, where `z` is the primitive `N`-th root of unity.

use super::cyclo::CycloScalar;
use crate::error::{GwaError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Recursive-descent parser over a byte string, reporting offsets relative
/// to `base` so callers embedding literals get absolute positions.
pub struct LiteralParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    conductor: u32,
}

impl<'a> LiteralParser<'a> {
    pub fn new(src: &'a str, base: usize, conductor: u32) -> Self {
        LiteralParser {
            src: src.as_bytes(),
            pos: 0,
            base,
            conductor,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(GwaError::Parse {
            offset: self.base + self.pos,
            msg: msg.into(),
        })
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.integer()?;
        let v: i64 = match i64::try_from(v) {
            Ok(v) => v,
            Err(_) => return self.err("exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<CycloScalar> {
        let n = self.conductor;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                let k = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.signed_int()?
                } else {
                    1
                };
                Ok(CycloScalar::root_of_unity(k, n))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(CycloScalar::from_rational(&BigRational::new(num, den), n))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<CycloScalar> {
        let mut v = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            v = &v * &self.factor()?;
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<CycloScalar> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v = &v + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    v = &v - &self.term()?;
                }
                _ => return Ok(v),
            }
        }
    }

    /// Parses the whole input as one literal.
    pub fn parse_all(mut self) -> Result<CycloScalar> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(v)
    }
}

/// Parses a literal such as `-3/2*z^5`, `1 + z` or `2`.
pub fn parse_scalar(s: &str, conductor: u32) -> Result<CycloScalar> {
    LiteralParser::new(s, 0, conductor).parse_all()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_literals() {
        for n in [1u32, 3, 4, 8, 12] {
            for k in 0..n as i64 {
                let x = &CycloScalar::from_rational(&BigRational::new(BigInt::from(-3), BigInt::from(2)), n)
                    * &CycloScalar::root_of_unity(k, n);
                assert_eq!(parse_scalar(&x.to_literal(), n).unwrap(), x);
            }
        }
        let s = &CycloScalar::one(5) + &CycloScalar::root_of_unity(2, 5);
        assert_eq!(parse_scalar(&s.to_string(), 5).unwrap(), s);
    }

    #[test]
    fn products_and_negative_powers() {
        let z = CycloScalar::root_of_unity(1, 6);
        assert_eq!(parse_scalar("2*z*z^-1", 6).unwrap(), CycloScalar::from_int(2, 6));
        assert_eq!(parse_scalar("(1+z)*z", 6).unwrap(), &(&CycloScalar::one(6) + &z) * &z);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_scalar("1 + q", 3) {
            Err(GwaError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_scalar("1/0", 3).is_err());
    }
}
