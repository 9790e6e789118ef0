//! Truncated Laurent series in one variable `z` with exponents in `(1/2)Z`,
//! and the q-deformed power `(1-z)^a_{q^2}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qscalar::{q_int, q_int_frac, q_power, ExactScalar, HalfExponent};

/// Series known exactly below `order`; coefficients at or above it are
/// unknown. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<HalfExponent, ExactScalar>,
    order: HalfExponent,
    min_exponent: HalfExponent,
}

impl TruncatedSeries {
    /// The zero series, known below `order`.
    pub fn zero(order: HalfExponent) -> Self {
        TruncatedSeries {
            coeffs: BTreeMap::new(),
            order,
            min_exponent: order,
        }
    }

    pub fn one(order: HalfExponent) -> Self {
        TruncatedSeries::from_terms([(HalfExponent::ZERO, ExactScalar::one())], order)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; terms at or
    /// above `order` are dropped and repeated exponents are summed.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (HalfExponent, ExactScalar)>,
        order: HalfExponent,
    ) -> Self {
        let mut coeffs: BTreeMap<HalfExponent, ExactScalar> = BTreeMap::new();
        for (e, c) in terms {
            if e >= order || c.is_zero() {
                continue;
            }
            let slot = coeffs.entry(e).or_default();
            *slot += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        let min_exponent = coeffs.keys().next().copied().unwrap_or(order);
        TruncatedSeries {
            coeffs,
            order,
            min_exponent,
        }
    }

    /// `1 - c z` to the given order.
    pub fn one_minus(c: ExactScalar, order: HalfExponent) -> Self {
        TruncatedSeries::from_terms(
            [(HalfExponent::ZERO, ExactScalar::one()), (HalfExponent::ONE, -c)],
            order,
        )
    }

    pub fn order(&self) -> HalfExponent {
        self.order
    }

    pub fn min_exponent(&self) -> HalfExponent {
        self.min_exponent
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HalfExponent, &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient, or `order` if none.
    pub fn valuation(&self) -> HalfExponent {
        self.coeffs.keys().next().copied().unwrap_or(self.order)
    }

    pub fn coeff(&self, e: HalfExponent) -> Result<ExactScalar> {
        if e >= self.order {
            return Err(Error::BeyondTruncation {
                exponent: e.to_string(),
                order: self.order.to_string(),
            });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_default())
    }

    /// Lowers the truncation order.
    pub fn truncate(&self, order: HalfExponent) -> Self {
        let order = order.min(self.order);
        TruncatedSeries::from_terms(
            self.coeffs.range(..order).map(|(e, c)| (*e, c.clone())),
            order,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        TruncatedSeries::from_terms(
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(e, c)| (*e, c.clone())),
            order,
        )
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            order: self.order,
            min_exponent: self.min_exponent,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        TruncatedSeries::from_terms(self.coeffs.iter().map(|(e, v)| (*e, v * c)), self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut out: BTreeMap<HalfExponent, ExactScalar> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = *e1 + *e2;
                if e >= order {
                    break;
                }
                let slot = out.entry(e).or_default();
                *slot += &(c1 * c2);
            }
        }
        TruncatedSeries::from_terms(out, order)
    }

    /// Multiplicative inverse. The result is known to the same relative
    /// precision as the input.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation();
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let lead_inv = self.coeffs[&v].inv()?;
        let rel = self.order - v;
        let steps = rel.doubled();
        // coefficients of self on the half grid relative to v
        let a: Vec<ExactScalar> = (0..steps)
            .map(|k| {
                self.coeffs
                    .get(&(v + HalfExponent::from_doubled(k)))
                    .cloned()
                    .unwrap_or_default()
            })
            .collect();
        let mut b: Vec<ExactScalar> = Vec::with_capacity(steps as usize);
        for k in 0..steps as usize {
            if k == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut acc = ExactScalar::zero();
            for j in 1..=k {
                if !a[j].is_zero() && !b[k - j].is_zero() {
                    acc += &(&a[j] * &b[k - j]);
                }
            }
            b.push(-(&acc * &lead_inv));
        }
        Ok(TruncatedSeries::from_terms(
            b.into_iter()
                .enumerate()
                .map(|(k, c)| (HalfExponent::from_doubled(k as i64) - v, c)),
            rel - v,
        ))
    }

    /// Substitutes `z -> q^c z`.
    pub fn scale_var(&self, c: HalfExponent) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (*e, v * &ExactScalar::u_pow(c.doubled() * e.doubled())))
                .collect(),
            order: self.order,
            min_exponent: self.min_exponent,
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: HalfExponent) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e + k, v.clone())).collect(),
            order: self.order + k,
            min_exponent: self.min_exponent + k,
        }
    }

    /// `exp(self)` for a series with positive valuation, via the recurrence
    /// `j e_j = sum_k k f_k e_(j-k)` (indices on the half grid).
    pub fn exp(&self) -> Result<Self> {
        let v = self.valuation();
        if v <= HalfExponent::ZERO && !self.is_zero() {
            return Err(Error::Invalid("exp needs positive valuation".into()));
        }
        let order = self.order.max(HalfExponent::ZERO);
        let n = order.doubled() as usize;
        let f: Vec<(usize, ExactScalar)> = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.doubled() as usize, c * &ExactScalar::from_int(e.doubled())))
            .collect();
        let mut e: Vec<ExactScalar> = vec![ExactScalar::zero(); n];
        if n > 0 {
            e[0] = ExactScalar::one();
        }
        for j in 1..n {
            let mut acc = ExactScalar::zero();
            for (k, kf) in &f {
                if *k > j {
                    break;
                }
                if !e[j - k].is_zero() {
                    acc += &(kf * &e[j - k]);
                }
            }
            e[j] = &acc * &ExactScalar::from_ratio(1, j as i64);
        }
        Ok(TruncatedSeries::from_terms(
            e.into_iter()
                .enumerate()
                .map(|(j, c)| (HalfExponent::from_doubled(j as i64), c)),
            order,
        ))
    }

    /// True iff all coefficients below `order` agree.
    pub fn equal_to(&self, other: &Self, order: HalfExponent) -> Result<bool> {
        if order > self.order || order > other.order {
            return Err(Error::BeyondTruncation {
                exponent: order.to_string(),
                order: self.order.min(other.order).to_string(),
            });
        }
        Ok(self.coeffs.range(..order).eq(other.coeffs.range(..order)))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.coeffs {
            if e.is_zero() {
                write!(f, "{c} + ")?;
            } else {
                write!(f, "{c} z^{e} + ")?;
            }
        }
        write!(f, "O(z^{})", self.order)
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a.mul(b)
}

pub fn series_inv(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.inv()
}

pub fn series_scale_var(s: &TruncatedSeries, c: HalfExponent) -> TruncatedSeries {
    s.scale_var(c)
}

pub fn series_coeff(s: &TruncatedSeries, e: HalfExponent) -> Result<ExactScalar> {
    s.coeff(e)
}

pub fn series_equal(a: &TruncatedSeries, b: &TruncatedSeries, order: HalfExponent) -> Result<bool> {
    a.equal_to(b, order)
}

fn check_order(order: HalfExponent) -> Result<()> {
    if order <= HalfExponent::ZERO {
        Err(Error::NonPositiveOrder)
    } else {
        Ok(())
    }
}

/// `(1-z)^a_{q^2} = exp(-sum_{n>=1} [a n] / (n [n]) z^n)`.
pub fn qpow_exp(a: HalfExponent, order: HalfExponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let mut log = Vec::new();
    let mut n = 1i64;
    while HalfExponent::int(n) < order {
        let c = q_int_frac(a, n)
            .checked_div(&(&ExactScalar::from_int(n) * &q_int(n, HalfExponent::ONE)?))?;
        log.push((HalfExponent::int(n), -c));
        n += 1;
    }
    TruncatedSeries::from_terms(log, order).exp()
}

/// `(1-z)^a_{q^2} = (z q^(1-a); q^2)_inf / (z q^(1+a); q^2)_inf`.
///
/// The ratio of the two infinite products is summed in closed form:
/// the coefficient of `z^k` is `(q^-2a; q^2)_k / (q^2; q^2)_k * q^(k(a+1))`.
pub fn qpow_product(a: HalfExponent, order: HalfExponent) -> Result<TruncatedSeries> {
    check_order(order)?;
    let one = ExactScalar::one();
    let mut terms = vec![(HalfExponent::ZERO, one.clone())];
    let mut ratio = one.clone();
    let mut k = 1i64;
    while HalfExponent::int(k) < order {
        let j = k - 1;
        // 1 - q^(-2a + 2j)
        let num = &one - &q_power(HalfExponent::int(2 * j) - a * 2);
        // 1 - q^(2j + 2)
        let den = &one - &q_power(HalfExponent::int(2 * j + 2));
        ratio = &ratio * &num.checked_div(&den)?;
        if ratio.is_zero() {
            break;
        }
        let c = &ratio * &q_power((a + HalfExponent::ONE) * k);
        terms.push((HalfExponent::int(k), c));
        k += 1;
    }
    Ok(TruncatedSeries::from_terms(terms, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> HalfExponent {
        HalfExponent::from_doubled(d)
    }

    fn int(v: i64) -> HalfExponent {
        HalfExponent::int(v)
    }

    fn q(e: i64) -> ExactScalar {
        q_power(h(e))
    }

    fn poly_series(coeffs: &[ExactScalar], order: HalfExponent) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            coeffs.iter().enumerate().map(|(k, c)| (int(k as i64), c.clone())),
            order,
        )
    }

    #[test]
    fn qpow_exp_examples() {
        let one_minus_z = TruncatedSeries::one_minus(ExactScalar::one(), int(5));
        assert_eq!(qpow_exp(int(1), int(5)).unwrap(), one_minus_z);
        assert_eq!(qpow_exp(int(0), int(5)).unwrap(), TruncatedSeries::one(int(5)));
        let half = q(1);
        let expect = -(&half + &half.inv().unwrap()).inv().unwrap();
        assert_eq!(qpow_exp(h(1), int(4)).unwrap().coeff(int(1)).unwrap(), expect);
        assert_eq!(qpow_exp(int(1), int(0)), Err(Error::NonPositiveOrder));
    }

    #[test]
    fn qpow_product_examples() {
        let two = qpow_product(int(2), int(8)).unwrap();
        let expect = TruncatedSeries::one_minus(q(2), int(8))
            .mul(&TruncatedSeries::one_minus(q(-2), int(8)));
        assert_eq!(two, expect);
        let geo = qpow_product(int(-1), int(6)).unwrap();
        assert_eq!(geo, poly_series(&vec![ExactScalar::one(); 6], int(6)));
        assert!(qpow_product(h(1), int(12))
            .unwrap()
            .equal_to(&qpow_exp(h(1), int(12)).unwrap(), int(12))
            .unwrap());
    }

    #[test]
    fn ring_examples() {
        let o = int(6);
        let s = TruncatedSeries::one_minus(ExactScalar::one(), o);
        assert_eq!(s.mul(&s.inv().unwrap()), TruncatedSeries::one(o));
        assert_eq!(s.scale_var(int(1)), TruncatedSeries::one_minus(q(2), o));
        let expect = -(&q(2) + &q(-2));
        assert_eq!(qpow_exp(int(2), int(8)).unwrap().coeff(int(1)).unwrap(), expect);
        assert!(s.coeff(int(6)).is_err());
        assert_eq!(TruncatedSeries::zero(o).inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn equality_examples() {
        let o = int(8);
        assert!(qpow_exp(int(1), o)
            .unwrap()
            .equal_to(&qpow_product(int(1), o).unwrap(), o)
            .unwrap());
        let a = TruncatedSeries::one_minus(ExactScalar::one(), o);
        let b = TruncatedSeries::one_minus(q(2), o);
        assert!(!a.equal_to(&b, o).unwrap());
        let p = qpow_exp(h(3), o).unwrap().mul(&qpow_exp(h(-3), o).unwrap());
        assert!(p.equal_to(&TruncatedSeries::one(o), o).unwrap());
        assert!(a.equal_to(&b, int(9)).is_err());
    }

    #[test]
    fn truncation_is_conservative() {
        let a = TruncatedSeries::one(int(4)).shift(h(1));
        let b = TruncatedSeries::one(int(6));
        let p = a.mul(&b);
        assert_eq!(p.order(), h(9));
        let inv = a.inv().unwrap();
        assert_eq!(inv.valuation(), h(-1));
        assert_eq!(inv.order(), h(7));
    }

    #[test]
    fn product_matches_exponential_formula() {
        let o = int(16);
        let mut exps: Vec<HalfExponent> = [-4, -3, -2, -1, 1, 2, 3, 4].into_iter().map(h).collect();
        exps.extend([h(5), h(-7), h(8), h(-6), h(0)]);
        for a in exps {
            let e = qpow_exp(a, o).unwrap();
            let p = qpow_product(a, o).unwrap();
            assert!(e.equal_to(&p, o).unwrap(), "a = {a}");
            let inv = qpow_product(-a, o).unwrap();
            assert!(p.mul(&inv).equal_to(&TruncatedSeries::one(o), o).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn half_power_contractions() {
        let o = int(12);
        let m = qpow_product(h(-1), o).unwrap();
        let merged = m.mul(&m.scale_var(int(-1)));
        let target = qpow_product(int(-1), o).unwrap().scale_var(h(-1));
        assert!(merged.equal_to(&target, o).unwrap());
        let p = qpow_product(h(1), o).unwrap();
        assert!(m.mul(&p).equal_to(&TruncatedSeries::one(o), o).unwrap());
    }
}
