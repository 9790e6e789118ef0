//! Canonical text form of scalars: `(q^2+1+q^-2)`, `(q^1/2+q^-1/2)^-1`,
//! `(q+1)/(q^3-2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::Poly;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Formats the `q` exponent `k/4`.
fn fmt_quarter(k: i64) -> String {
    let g = k.gcd(&4);
    let (n, d) = (k / g, 4 / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn fmt_laurent(terms: &[(i64, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if *k == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push('q');
        if *k != 4 {
            out.push('^');
            out.push_str(&fmt_quarter(*k));
        }
    }
    out
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        let den = self.denominator();
        // center the denominator so that e.g. u^4+1 prints as q^1/2+q^-1/2
        let c = (den.degree() / 2) as i64;
        let num_terms = ExactScalar::laurent_terms(self.numerator(), self.u_shift() - c);
        if den.is_one() {
            return write!(f, "({})", fmt_laurent(&num_terms));
        }
        let den_terms = ExactScalar::laurent_terms(den, -c);
        let num_is_one = num_terms.len() == 1 && num_terms[0].0 == 0 && num_terms[0].1.is_one();
        if num_is_one {
            write!(f, "({})^-1", fmt_laurent(&den_terms))
        } else {
            write!(f, "({})/({})", fmt_laurent(&num_terms), fmt_laurent(&den_terms))
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.base + self.pos, msg)
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    /// Exponent `k` or `k/d` with `d | 4`; returns it in quarter units.
    fn quarter_exponent(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let n = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        let d = if self.eat(b'/') {
            let d = self.digits().ok_or_else(|| self.err("expected exponent denominator"))?;
            let d: i64 = d.try_into().map_err(|_| self.err("bad denominator"))?;
            if !matches!(d, 1 | 2 | 4) {
                return Err(self.err("exponent denominator must be 1, 2 or 4"));
            }
            d
        } else {
            1
        };
        let k = n * (4 / d);
        Ok(if neg { -k } else { k })
    }

    /// Laurent polynomial in `q`; returns (terms as (u-exponent, coeff)).
    fn laurent(&mut self) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    BigInt::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -BigInt::one()
                }
                _ if first => BigInt::one(),
                _ => break,
            };
            first = false;
            let coeff = self.digits();
            let mut k = 0;
            if self.eat(b'q') {
                k = 4;
                if self.eat(b'^') {
                    k = self.quarter_exponent()?;
                }
            } else if coeff.is_none() {
                return Err(self.err("expected a term"));
            }
            let c = sign * coeff.unwrap_or_else(BigInt::one);
            acc += &ExactScalar::from_laurent(Poly::constant(c), k);
        }
        Ok(acc)
    }
}

/// Parses one scalar starting at byte `pos` of `s`; returns the value and the
/// position after it. Accepts the canonical forms plus bare integers.
pub(crate) fn parse_scalar_at(s: &str, pos: usize, base: usize) -> Result<(ExactScalar, usize)> {
    let mut cur = Cursor {
        s: s.as_bytes(),
        pos,
        base,
    };
    if cur.eat(b'(') {
        let num = cur.laurent()?;
        cur.expect(b')')?;
        let save = cur.pos;
        if cur.eat(b'^') {
            if cur.eat(b'-') && cur.digits() == Some(BigInt::one()) {
                let v = num.inv().map_err(|_| cur.err("inverse of zero"))?;
                return Ok((v, cur.pos));
            }
            return Err(cur.err("only ^-1 is allowed after a parenthesized scalar"));
        }
        cur.pos = save;
        if cur.eat(b'/') {
            cur.expect(b'(')?;
            let den = cur.laurent()?;
            cur.expect(b')')?;
            let v = num.checked_div(&den).map_err(|_| cur.err("division by zero"))?;
            return Ok((v, cur.pos));
        }
        cur.pos = save;
        Ok((num, cur.pos))
    } else {
        let v = cur.laurent()?;
        Ok((v, cur.pos))
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (v, pos) = parse_scalar_at(s, 0, 0)?;
        if s[pos..].trim().is_empty() {
            Ok(v)
        } else {
            Err(Error::parse(pos, "trailing input"))
        }
    }
}
