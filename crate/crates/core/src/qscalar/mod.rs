//! Exact arithmetic in `Q(q^(1/4))` and q-combinatorics.
//!
//! Every scalar in the library is an [`ExactScalar`]. Exponents of `q`, inner
//! products and degrees that live in `(1/2)Z` are [`HalfExponent`]s.

mod half;
mod poly;
mod scalar;
pub(crate) mod text;

pub use half::HalfExponent;
pub use poly::Poly;
pub use scalar::ExactScalar;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// `q^e`.
pub fn q_power(e: HalfExponent) -> ExactScalar {
    ExactScalar::q_pow(e)
}

/// `[m]_b = (b^m - b^-m) / (b - b^-1)` in the base `b = q^base`.
///
/// `base = 1` is the plain q-integer `[m]`; `base = 1/2` is `[m]_i` for a
/// short simple root (`q_i = q^(1/2)`).
pub fn q_int(m: i64, base: HalfExponent) -> Result<ExactScalar> {
    if base.is_zero() {
        return Err(Error::ZeroBase);
    }
    // u-exponent of the base
    let a = 2 * base.doubled();
    Ok(sym_ratio(a * m, a))
}

/// `(u^x - u^-x) / (u^a - u^-a)` for `a != 0`.
fn sym_ratio(x: i64, a: i64) -> ExactScalar {
    if x == 0 {
        return ExactScalar::zero();
    }
    if a < 0 {
        return sym_ratio(-x, -a);
    }
    if x % a == 0 {
        // geometric sum, a Laurent polynomial
        let m = x / a;
        let (m, sign) = if m < 0 { (-m, -1) } else { (m, 1) };
        let mut acc = ExactScalar::zero();
        for k in 0..m {
            acc += &ExactScalar::u_pow(a * (m - 1 - 2 * k));
        }
        return if sign < 0 { -acc } else { acc };
    }
    let num = &ExactScalar::u_pow(x) - &ExactScalar::u_pow(-x);
    let den = &ExactScalar::u_pow(a) - &ExactScalar::u_pow(-a);
    &num / &den
}

/// `[a n]` for `a` in `(1/2)Z`, in base `q`.
pub fn q_int_frac(a: HalfExponent, n: i64) -> ExactScalar {
    // q^(a n) = u^(2 a.doubled n)
    sym_ratio(2 * a.doubled() * n, 4)
}

/// `[m]_b!`.
pub fn q_factorial(m: i64, d: HalfExponent) -> Result<ExactScalar> {
    let mut acc = ExactScalar::one();
    for k in 1..=m {
        acc *= &q_int(k, d)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[m r]_b` in the base `b = q^base`.
pub fn q_binom(m: i64, r: i64, d: HalfExponent) -> Result<ExactScalar> {
    if r < 0 || r > m {
        return Err(Error::BinomialRange { m, r });
    }
    if d.is_zero() {
        return Err(Error::ZeroBase);
    }
    let r = r.min(m - r);
    let mut acc = ExactScalar::one();
    for k in 0..r {
        acc *= &q_int(m - k, d)?;
        acc = acc.checked_div(&q_int(k + 1, d)?)?;
    }
    Ok(acc)
}

/// Value at `q = 1`.
pub fn classical_limit(s: &ExactScalar) -> Result<BigRational> {
    s.classical_limit()
}
