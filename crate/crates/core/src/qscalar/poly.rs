//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and equality is structural.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// `c * u^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of factors of `u` dividing the polynomial.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `u^k`; the caller guarantees `k <= low_order()`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(k <= self.low_order() || self.is_zero());
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len().min(other.coeffs.len()) >= KRONECKER_MIN {
            return self.mul_kronecker(other);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Multiplication through a single big-integer product: both factors are
    /// evaluated at `2^bits` with `bits` wide enough that every product
    /// coefficient sits in its own balanced digit.
    fn mul_kronecker(&self, other: &Poly) -> Poly {
        let max_bits = |p: &Poly| p.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
        let terms = self.coeffs.len().min(other.coeffs.len()) as u64;
        let bits = max_bits(self) + max_bits(other) + (64 - terms.leading_zeros() as u64) + 2;
        let prod = pack(&self.coeffs, bits) * pack(&other.coeffs, bits);
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        Poly::from_coeffs(unpack(prod, bits, len).expect("digits are wide enough"))
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self mod d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.leading().expect("nonzero divisor").clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            if t.is_zero() {
                r.pop();
                continue;
            }
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let off = top - dd;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[off + j] -= &t * b;
            }
            r.pop();
            while matches!(r.last(), Some(c) if c.is_zero()) {
                r.pop();
            }
        }
        Poly::from_coeffs(r)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.degree() > self.degree() {
            return None;
        }
        if d.degree() == 0 {
            let c = &d.coeffs[0];
            return self.coeffs.iter().all(|a| (a % c).is_zero()).then(|| self.div_scalar(c));
        }
        if d.coeffs.len() >= KRONECKER_MIN {
            if let Some(q) = self.div_kronecker(d) {
                return q;
            }
        }
        self.div_schoolbook(d)
    }

    /// Division of the values at `2^bits`. A nonzero remainder proves that `d`
    /// does not divide; otherwise the quotient is confirmed by multiplying
    /// back, and `None` means the digit width was too small to decide.
    fn div_kronecker(&self, d: &Poly) -> Option<Option<Poly>> {
        let max_bits = |p: &Poly| p.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
        let len = self.coeffs.len() - d.coeffs.len() + 1;
        let bits = max_bits(self) + max_bits(d) + (64 - (len as u64).leading_zeros() as u64) + 4;
        let (quo, rem) = pack(&self.coeffs, bits).div_rem(&pack(&d.coeffs, bits));
        if !rem.is_zero() {
            return Some(None);
        }
        let q = Poly::from_coeffs(unpack(quo, bits, len)?);
        (q.mul(d) == *self).then_some(Some(q))
    }

    fn div_schoolbook(&self, d: &Poly) -> Option<Poly> {
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.leading().unwrap();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for top in (dd..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let (quot, rem) = r[top].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let off = top - dd;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[off + j] -= &quot * b;
            }
            q[off] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(q))
    }

    /// Greatest common divisor in `Z[u]`, normalized with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_with_content();
        }
        if other.is_zero() {
            return self.primitive_with_content();
        }
        let cg = self.content().gcd(&other.content());
        let (a, b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        let g = heuristic_gcd(&a, &b).unwrap_or_else(|| prs_gcd(a, b));
        g.scale(&cg)
    }

    fn primitive_with_content(&self) -> Poly {
        if self.leading().is_some_and(|l| l.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }
}

const KRONECKER_MIN: usize = 12;

/// `sum c_i 2^(i bits)`, assembled from the positive and negative parts.
fn pack(coeffs: &[BigInt], bits: u64) -> BigInt {
    let words = (coeffs.len() as u64 * bits).div_ceil(64) as usize + 1;
    let mut pos = vec![0u64; words];
    let mut neg = vec![0u64; words];
    for (i, c) in coeffs.iter().enumerate() {
        let target = if c.is_negative() { &mut neg } else { &mut pos };
        write_bits(target, i as u64 * bits, c.magnitude().iter_u64_digits());
    }
    BigInt::from(BigUint::new(to_u32(&pos))) - BigInt::from(BigUint::new(to_u32(&neg)))
}

/// Inverse of `pack` for `len` balanced digits of width `bits`; `None` if
/// `v` does not have that shape.
fn unpack(v: BigInt, bits: u64, len: usize) -> Option<Vec<BigInt>> {
    // adding 2^(bits-1) to every digit makes all of them nonnegative
    let half = BigInt::one() << (bits - 1);
    let offset = pack(&vec![half.clone(); len], bits);
    let shifted = (v + offset).to_biguint()?;
    if shifted.bits() > len as u64 * bits {
        return None;
    }
    let words = shifted.to_u64_digits();
    if bits <= 62 {
        let h = 1i64 << (bits - 1);
        return Some(
            (0..len)
                .map(|i| BigInt::from(read_small(&words, i as u64 * bits, bits) as i64 - h))
                .collect(),
        );
    }
    Some(
        (0..len)
            .map(|i| BigInt::from(read_bits(&words, i as u64 * bits, bits)) - &half)
            .collect(),
    )
}

fn read_small(src: &[u64], at: u64, bits: u64) -> u64 {
    let (w, b) = ((at / 64) as usize, at % 64);
    let lo = src.get(w).copied().unwrap_or(0) >> b;
    let hi = if b > 0 { src.get(w + 1).copied().unwrap_or(0) << (64 - b) } else { 0 };
    (lo | hi) & ((1u64 << bits) - 1)
}

fn to_u32(words: &[u64]) -> Vec<u32> {
    words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect()
}

fn write_bits(dst: &mut [u64], at: u64, src: impl Iterator<Item = u64>) {
    let (w, b) = ((at / 64) as usize, at % 64);
    for (k, x) in src.enumerate() {
        dst[w + k] |= x << b;
        if b > 0 && x >> (64 - b) != 0 {
            dst[w + k + 1] |= x >> (64 - b);
        }
    }
}

fn read_bits(src: &[u64], at: u64, bits: u64) -> BigUint {
    let mut out = Vec::with_capacity(bits.div_ceil(64) as usize);
    let (w, b) = ((at / 64) as usize, at % 64);
    let mut left = bits;
    let mut k = 0;
    while left > 0 {
        let lo = src.get(w + k).copied().unwrap_or(0) >> b;
        let hi = if b > 0 { src.get(w + k + 1).copied().unwrap_or(0) << (64 - b) } else { 0 };
        let mut x = lo | hi;
        if left < 64 {
            x &= (1u64 << left) - 1;
        }
        out.push(x);
        left = left.saturating_sub(64);
        k += 1;
    }
    BigUint::new(to_u32(&out))
}

/// Primitive remainder sequence for primitive `a`, `b` with
/// `deg a >= deg b`.
fn prs_gcd(mut a: Poly, mut b: Poly) -> Poly {
    while !b.is_zero() {
        if b.degree() == 0 {
            return Poly::one();
        }
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive();
    }
    a.primitive()
}

/// Heuristic gcd of two primitive polynomials by evaluation at `2^k` and
/// reconstruction from the balanced digits of the integer gcd. A candidate
/// is returned only once it is shown to divide both inputs, in which case it
/// is the gcd; `None` means the caller must fall back to remainder sequences.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.degree() == 0 || b.degree() == 0 {
        return Some(Poly::one());
    }
    let max_bits = |p: &Poly| p.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
    let mut k = max_bits(a).max(max_bits(b)) + 2;
    for attempt in 0..6 {
        let va = pack(&a.coeffs, k);
        let vb = pack(&b.coeffs, k);
        let gamma = big_gcd(&va, &vb);
        if let Some(g) = unpack(gamma, k, digits(&va, k)) {
            let g = Poly::from_coeffs(g).primitive();
            if g.degree() == 0 {
                return Some(Poly::one());
            }
            if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                return Some(g);
            }
        }
        k += 7 + attempt;
    }
    None
}

/// Nonnegative integer gcd; large operands go through a subquadratic gcd.
fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.bits().min(b.bits()) < 512 {
        return a.gcd(b);
    }
    let to_ubig = |v: &BigInt| dashu_int::UBig::from_words(&v.magnitude().to_u64_digits());
    let g = dashu_int::ops::Gcd::gcd(to_ubig(a), to_ubig(b));
    BigInt::from(BigUint::new(to_u32(g.as_words())))
}

/// Number of balanced base-`2^k` digits enough to hold `v`.
fn digits(v: &BigInt, k: u64) -> usize {
    (v.bits() / k) as usize + 2
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}
