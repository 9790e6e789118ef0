//! Vector literals: `(q+q^-1) a1(-1)^2 b1(-2) e[1,0] t[1] + e[0,0] t[]`.
//! A zero `lambda~` prints as `t[]`, and `t[...]` may be omitted on input.

use super::{Creation, Family, FockMonomial, FockVector};
use crate::error::{Error, Result};
use crate::lattice::{WeightA, WeightC};
use crate::qscalar::text::parse_scalar_at;
use crate::qscalar::ExactScalar;

pub(crate) fn format_monomial(m: &FockMonomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (g, p) in &m.creation {
        let f = match g.family {
            Family::A => 'a',
            Family::B => 'b',
        };
        let mut s = format!("{f}{}(-{})", g.index, g.level);
        if *p > 1 {
            s.push_str(&format!("^{p}"));
        }
        parts.push(s);
    }
    parts.push(m.lambda.to_string());
    if m.lambda_tilde.is_zero() {
        parts.push("t[]".into());
    } else {
        parts.push(m.lambda_tilde.to_string());
    }
    parts.join(" ")
}

pub(crate) fn format_term(m: &FockMonomial, c: &ExactScalar) -> String {
    if c.is_one() {
        format_monomial(m)
    } else {
        format!("{c} {}", format_monomial(m))
    }
}

struct Cursor<'a> {
    s: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.b.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn uint(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.s[start..self.pos].parse().map_err(|_| Error::parse(start, "number too large"))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }
}

/// Parses `e[m1,...,mn]` (after the `e`).
fn lambda_literal(cur: &mut Cursor) -> Result<WeightC> {
    Ok(WeightC::new(cur.int_list()?))
}

fn term(cur: &mut Cursor, rank: &mut Option<usize>) -> Result<(FockMonomial, ExactScalar)> {
    let mut coef = ExactScalar::one();
    if cur.eat(b'-') {
        coef = -coef;
    }
    if matches!(cur.peek(), Some(b'(') | Some(b'0'..=b'9') | Some(b'q')) {
        let (c, pos) = parse_scalar_at(cur.s, cur.pos, 0)?;
        cur.pos = pos;
        coef = &coef * &c;
    }
    let mut creation: Vec<(Creation, u32)> = Vec::new();
    let lambda;
    loop {
        match cur.peek() {
            Some(b'a') | Some(b'b') => {
                let family = if cur.b[cur.pos] == b'a' { Family::A } else { Family::B };
                cur.pos += 1;
                let index = cur.uint()? as usize;
                cur.expect(b'(')?;
                if !cur.eat(b'-') {
                    return Err(cur.err("creation operators have negative modes, e.g. a1(-2)"));
                }
                let level = cur.uint()?;
                if level == 0 {
                    return Err(cur.err("mode must be nonzero"));
                }
                cur.expect(b')')?;
                let mut p: u32 = 1;
                while cur.eat(b'^') {
                    let e = cur.uint()?;
                    p = p.checked_mul(e as u32).ok_or_else(|| cur.err("power too large"))?;
                }
                creation.push((Creation { family, index, level }, p));
            }
            Some(b'e') => {
                cur.pos += 1;
                lambda = lambda_literal(cur)?;
                break;
            }
            _ => return Err(cur.err("expected a creation operator or e[...]")),
        }
    }
    let n = lambda.rank();
    if n < 2 {
        return Err(cur.err("rank must be at least 2"));
    }
    if let Some(r) = *rank {
        if r != n {
            return Err(cur.err(format!("e[...] has {n} entries, expected {r}")));
        }
    }
    *rank = Some(n);
    let lt = if cur.peek() == Some(b't') {
        cur.pos += 1;
        let at = cur.pos;
        let t = cur.int_list()?;
        if t.is_empty() {
            WeightA::zero(n)
        } else if t.len() != n - 1 {
            return Err(Error::parse(at, format!("t[...] needs {} entries", n - 1)));
        } else {
            WeightA::new(t)
        }
    } else {
        WeightA::zero(n)
    };
    let at = cur.pos;
    let m = FockMonomial::new(creation, lambda, lt).map_err(|e| Error::parse(at, e.to_string()))?;
    Ok((m, coef))
}

/// Parses a vector literal. With `rank` given, every label must match it.
pub fn parse_vector(s: &str, rank: Option<usize>) -> Result<FockVector> {
    let mut cur = Cursor {
        s,
        b: s.as_bytes(),
        pos: 0,
    };
    let mut rank = rank;
    let mut v = FockVector::zero();
    if cur.peek() == Some(b'0') && s.trim() == "0" {
        return Ok(v);
    }
    loop {
        let (m, c) = term(&mut cur, &mut rank)?;
        v.add_term(m, c);
        if cur.peek().is_none() {
            return Ok(v);
        }
        cur.expect(b'+')?;
    }
}
