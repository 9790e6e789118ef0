//! Operator words: `x+_1[0] x-_2[-1] psi_1[2] phi_1[-1] a_1[-3] K_2 K_2^-1 e_1 e0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::qscalar::{ExactScalar, HalfExponent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeKind {
    XPlus,
    XMinus,
    Psi,
    Phi,
    K,
    Kinv,
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeOp {
    pub kind: ModeKind,
    pub index: usize,
    /// Ignored for `K` and `Kinv`.
    pub mode: i64,
}

impl ModeOp {
    pub fn x_plus(index: usize, mode: i64) -> Self {
        ModeOp { kind: ModeKind::XPlus, index, mode }
    }

    pub fn x_minus(index: usize, mode: i64) -> Self {
        ModeOp { kind: ModeKind::XMinus, index, mode }
    }

    pub fn psi(index: usize, mode: i64) -> Self {
        ModeOp { kind: ModeKind::Psi, index, mode }
    }

    pub fn phi(index: usize, mode: i64) -> Self {
        ModeOp { kind: ModeKind::Phi, index, mode }
    }

    pub fn a(index: usize, mode: i64) -> Self {
        ModeOp { kind: ModeKind::A, index, mode }
    }

    pub fn k(index: usize) -> Self {
        ModeOp { kind: ModeKind::K, index, mode: 0 }
    }

    pub fn k_inv(index: usize) -> Self {
        ModeOp { kind: ModeKind::Kinv, index, mode: 0 }
    }
}

impl fmt::Display for ModeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, k) = (self.index, self.mode);
        match self.kind {
            ModeKind::XPlus => write!(f, "x+_{i}[{k}]"),
            ModeKind::XMinus => write!(f, "x-_{i}[{k}]"),
            ModeKind::Psi => write!(f, "psi_{i}[{k}]"),
            ModeKind::Phi => write!(f, "phi_{i}[{k}]"),
            ModeKind::A => write!(f, "a_{i}[{k}]"),
            ModeKind::K => write!(f, "K_{i}"),
            ModeKind::Kinv => write!(f, "K_{i}^-1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Mode(ModeOp),
    E0,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Mode(m) => m.fmt(f),
            Operator::E0 => write!(f, "e0"),
        }
    }
}

/// Operators and parameters of a right-nested q-multibracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    pub ops: Vec<ModeOp>,
    /// `params[0]` belongs to the innermost bracket.
    pub params: Vec<ExactScalar>,
}

impl BracketSpec {
    /// `x^-_(1,0) ... x^-_(n,0) x^-_(n-1,0) ... x^-_(2,0) x^-_(1,1)` with
    /// parameters `q^-1/2` (n-2 times), `q^-1`, `q^-1/2` (n-2 times), `1`.
    pub fn default_for(n: usize) -> Self {
        let mut ops: Vec<ModeOp> = (1..=n).map(|i| ModeOp::x_minus(i, 0)).collect();
        ops.extend((2..n).rev().map(|i| ModeOp::x_minus(i, 0)));
        ops.push(ModeOp::x_minus(1, 1));
        let half = ExactScalar::q_pow(-HalfExponent::HALF);
        let mut params = vec![half.clone(); n.saturating_sub(2)];
        params.push(ExactScalar::q_pow(-HalfExponent::ONE));
        params.extend(std::iter::repeat_n(half, n.saturating_sub(2)));
        params.push(ExactScalar::one());
        BracketSpec { ops, params }
    }
}

/// Parses a whitespace-separated operator product.
pub fn parse_operators(s: &str) -> Result<Vec<Operator>> {
    let b = s.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        while pos < b.len() && b[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == b.len() {
            break;
        }
        let start = pos;
        let rest = &s[pos..];
        if rest.starts_with("e0") && !rest[2..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            out.push(Operator::E0);
            pos += 2;
            continue;
        }
        let (kind, len) = if rest.starts_with("x+_") {
            (Some(ModeKind::XPlus), 3)
        } else if rest.starts_with("x-_") {
            (Some(ModeKind::XMinus), 3)
        } else if rest.starts_with("psi_") {
            (Some(ModeKind::Psi), 4)
        } else if rest.starts_with("phi_") {
            (Some(ModeKind::Phi), 4)
        } else if rest.starts_with("a_") {
            (Some(ModeKind::A), 2)
        } else if rest.starts_with("K_") {
            (Some(ModeKind::K), 2)
        } else if rest.starts_with("e_") {
            (None, 2)
        } else {
            return Err(Error::parse(start, "unknown operator"));
        };
        pos += len;
        let (index, p) = number(s, pos)?;
        pos = p;
        if index <= 0 {
            return Err(Error::parse(start, "operator index must be positive"));
        }
        let index = index as usize;
        let op = match kind {
            None => ModeOp::x_plus(index, 0),
            Some(ModeKind::K) => {
                if s[pos..].starts_with("^-1") {
                    pos += 3;
                    ModeOp::k_inv(index)
                } else {
                    ModeOp::k(index)
                }
            }
            Some(kind) => {
                if b.get(pos) != Some(&b'[') {
                    return Err(Error::parse(pos, "expected '['"));
                }
                let (mode, p) = number(s, pos + 1)?;
                pos = p;
                if b.get(pos) != Some(&b']') {
                    return Err(Error::parse(pos, "expected ']'"));
                }
                pos += 1;
                ModeOp { kind, index, mode }
            }
        };
        if pos < b.len() && !b[pos].is_ascii_whitespace() {
            return Err(Error::parse(pos, "expected whitespace between operators"));
        }
        out.push(Operator::Mode(op));
    }
    Ok(out)
}

fn number(s: &str, pos: usize) -> Result<(i64, usize)> {
    let b = s.as_bytes();
    let mut end = pos;
    if b.get(end) == Some(&b'-') {
        end += 1;
    }
    let digits = end;
    while end < b.len() && b[end].is_ascii_digit() {
        end += 1;
    }
    if end == digits {
        return Err(Error::parse(pos, "expected an integer"));
    }
    let v = s[pos..end].parse().map_err(|_| Error::parse(pos, "integer out of range"))?;
    Ok((v, end))
}
