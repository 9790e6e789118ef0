use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::half::HalfExponent;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Exact element of `Q(u)` with `u = q^(1/4)`.
///
/// Stored as `u^shift * num / den` with `num(0) != 0`, `den(0) != 0`,
/// `gcd(num, den) = 1` in `Z[u]` and a positive leading coefficient on `den`.
/// Two scalars are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactScalar {
    num: Poly,
    den: Poly,
    shift: i64,
}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
        self.shift.hash(state);
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        ExactScalar::zero()
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            num: Poly::zero(),
            den: Poly::one(),
            shift: 0,
        }
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        ExactScalar::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        if c.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            num: Poly::constant(c),
            den: Poly::one(),
            shift: 0,
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        ExactScalar::from_parts(Poly::from_i64(&[n]), Poly::from_i64(&[d]), 0)
    }

    pub fn from_bigrational(r: &BigRational) -> Self {
        ExactScalar::from_parts(
            Poly::constant(r.numer().clone()),
            Poly::constant(r.denom().clone()),
            0,
        )
    }

    /// `u^k = q^(k/4)`.
    pub fn u_pow(k: i64) -> Self {
        ExactScalar {
            num: Poly::one(),
            den: Poly::one(),
            shift: k,
        }
    }

    /// `q^e` for `e` in `(1/2)Z`.
    pub fn q_pow(e: HalfExponent) -> Self {
        ExactScalar::u_pow(2 * e.doubled())
    }

    /// `q^(k/4)`.
    pub fn q_quarter_pow(k: i64) -> Self {
        ExactScalar::u_pow(k)
    }

    /// Laurent polynomial `u^shift * p`.
    pub fn from_laurent(p: Poly, shift: i64) -> Self {
        ExactScalar::from_parts(p, Poly::one(), shift)
    }

    /// Builds `u^shift * num / den` and brings it to canonical form.
    pub fn from_parts(num: Poly, den: Poly, shift: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ExactScalar::zero();
        }
        let nl = num.low_order();
        let dl = den.low_order();
        let mut num = num.shift_down(nl);
        let mut den = den.shift_down(dl);
        let shift = shift + nl as i64 - dl as i64;
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
        }
        ExactScalar::fix_sign(num, den, shift)
    }

    fn fix_sign(num: Poly, den: Poly, shift: i64) -> Self {
        if den.leading().is_some_and(|l| l.is_negative()) {
            ExactScalar {
                num: num.neg(),
                den: den.neg(),
                shift,
            }
        } else {
            ExactScalar { num, den, shift }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Power of `u` factored out of the numerator.
    pub fn u_shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// If the scalar is `c * u^k` with `c` an integer, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(BigInt, i64)> {
        if self.den.is_one() && self.num.coeffs().len() == 1 {
            Some((self.num.coeffs()[0].clone(), self.shift))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar::fix_sign(
            self.den.clone(),
            self.num.clone(),
            -self.shift,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut result = ExactScalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Substitutes `u -> u^-1`, i.e. `q -> q^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let rev = |p: &Poly| {
            let mut c = p.coeffs().to_vec();
            c.reverse();
            Poly::from_coeffs(c)
        };
        let dn = self.num.degree() as i64;
        let dd = self.den.degree() as i64;
        ExactScalar::from_parts(rev(&self.num), rev(&self.den), -self.shift - dn + dd)
    }

    /// Value at `u = 1` (equivalently `q = 1`).
    pub fn classical_limit(&self) -> Result<BigRational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne);
        }
        Ok(BigRational::new(self.num.eval_at_one(), d))
    }

    /// Value at an integer point `u = x`, for randomized identity checks.
    pub fn eval_u(&self, x: i64) -> Option<BigRational> {
        assert!(x != 0);
        let d = self.den.eval_i64(x);
        if d.is_zero() {
            return None;
        }
        let xr = BigRational::from_integer(BigInt::from(x));
        let p = if self.shift >= 0 {
            num_traits::pow(xr, self.shift as usize)
        } else {
            num_traits::pow(xr, (-self.shift) as usize).recip()
        };
        Some(p * BigRational::new(self.num.eval_i64(x), d))
    }

    /// Terms `(u-exponent, coefficient)` of the numerator Laurent polynomial
    /// `u^shift * num`, highest first.
    pub(crate) fn laurent_terms(p: &Poly, shift: i64) -> Vec<(i64, BigInt)> {
        p.coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + shift, c.clone()))
            .collect()
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let n1 = self.num.shift_up((self.shift - s) as usize);
        let n2 = other.num.shift_up((other.shift - s) as usize);
        if self.den == other.den {
            let t = n1.add(&n2);
            return ExactScalar::from_parts(t, self.den.clone(), s);
        }
        if self.den.is_one() {
            let t = n1.mul(&other.den).add(&n2);
            return ExactScalar::reduce_low(t, other.den.clone(), s);
        }
        if other.den.is_one() {
            let t = n1.add(&n2.mul(&self.den));
            return ExactScalar::reduce_low(t, self.den.clone(), s);
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let t = n1.mul(&other.den).add(&n2.mul(&self.den));
            return ExactScalar::reduce_low(t, self.den.mul(&other.den), s);
        }
        let e1 = self.den.div_exact(&g).expect("gcd divides");
        let e2 = other.den.div_exact(&g).expect("gcd divides");
        let t = n1.mul(&e2).add(&n2.mul(&e1));
        if t.is_zero() {
            return ExactScalar::zero();
        }
        let h = t.gcd(&g);
        let (t, g) = if h.is_one() {
            (t, g)
        } else {
            (t.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        ExactScalar::reduce_low(t, g.mul(&e1).mul(&e2), s)
    }

    /// Canonicalizes when `num` and `den` are already coprime.
    fn reduce_low(num: Poly, den: Poly, shift: i64) -> Self {
        if num.is_zero() {
            return ExactScalar::zero();
        }
        let nl = num.low_order();
        let num = num.shift_down(nl);
        ExactScalar::fix_sign(num, den, shift + nl as i64)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ExactScalar::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            return ExactScalar {
                num: self.num.mul(&other.num),
                den: Poly::one(),
                shift,
            };
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        ExactScalar::fix_sign(n1.mul(&n2), d1.mul(&d2), shift)
    }
}

/// Removes the common factor of `n` and `d`.
fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = n.gcd(d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
    }
}

impl std::fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total structural order, used only for deterministic sorting.
impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.add_impl(rhs)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        self.add_impl(&rhs)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = self.add_impl(rhs);
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self.add_impl(&-rhs)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self.add_impl(&-rhs)
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = self.add_impl(&-rhs);
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        self.mul_impl(rhs)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        self.mul_impl(&rhs)
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = self.mul_impl(rhs);
    }
}

/// Panics on division by zero; use [`ExactScalar::checked_div`] otherwise.
impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: self.num.neg(),
            den: self.den.clone(),
            shift: self.shift,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(c: i64) -> Self {
        ExactScalar::from_int(c)
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |a, b| a * b)
    }
}
