//! Exact polynomials in `z1, z2, z3, w` and a Laurent variable `a`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qscalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z1,
    Z2,
    Z3,
    W,
    A,
}

impl Var {
    fn slot(self) -> usize {
        self as usize
    }

    fn name(slot: usize) -> &'static str {
        ["z1", "z2", "z3", "w", "a"][slot]
    }
}

type Exps = [i32; 5];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, ExactScalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; 5], c);
        p
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(v, 1)
    }

    /// `v^e`; negative powers are only meaningful for `a`.
    pub fn monomial(v: Var, e: i32) -> Self {
        let mut x = [0; 5];
        x[v.slot()] = e;
        let mut p = MultiPoly::zero();
        p.add_term(x, ExactScalar::one());
        p
    }

    fn add_term(&mut self, e: Exps, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(ExactScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = MultiPoly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::constant(ExactScalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames `z1, z2, z3` to `z_perm[0], z_perm[1], z_perm[2]` (0-based).
    pub fn permute_z(&self, perm: [usize; 3]) -> Self {
        let mut out = MultiPoly::zero();
        for (e, v) in &self.terms {
            let mut x = *e;
            for (k, &p) in perm.iter().enumerate() {
                x[p] = e[k];
            }
            out.add_term(x, v.clone());
        }
        out
    }

    /// Substitutes `a = value`.
    pub fn eval_a(&self, value: &ExactScalar) -> Self {
        let mut out = MultiPoly::zero();
        for (e, v) in &self.terms {
            let mut x = *e;
            let k = x[Var::A.slot()];
            x[Var::A.slot()] = 0;
            out.add_term(x, v * &value.pow(k as i64));
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        let mut out = MultiPoly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, f(v));
        }
        out
    }

    /// Printed terms, one per monomial.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|(e, c)| format_term(e, c)).collect()
    }
}

fn format_term(e: &Exps, c: &ExactScalar) -> String {
    let mut s = c.to_string();
    for (slot, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => s.push_str(&format!(" {}", Var::name(slot))),
            _ => s.push_str(&format!(" {}^{}", Var::name(slot), k)),
        }
    }
    s
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.term_strings().join(" + "))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, v.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, -v.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&ExactScalar::from_int(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for k in 0..5 {
                    e[k] += e2[k];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul<&ExactScalar> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &ExactScalar) -> MultiPoly {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn ring_basics() {
        let x = &v(Var::Z1) + &v(Var::W);
        let sq = x.pow(2);
        assert_eq!(sq.len(), 3);
        let diff = &(&sq - &v(Var::Z1).pow(2)) - &v(Var::W).pow(2);
        assert_eq!(diff, v(Var::Z1).scale(&ExactScalar::from_int(2)).mul(&v(Var::W)));
        assert!((&x - &x).is_zero());
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn permutation_and_substitution() {
        let p = &v(Var::Z1) * &v(Var::Z2).pow(2);
        let swapped = p.permute_z([1, 0, 2]);
        assert_eq!(swapped, &v(Var::Z2) * &v(Var::Z1).pow(2));
        let a = &MultiPoly::monomial(Var::A, -1) * &v(Var::W);
        assert_eq!(a.eval_a(&ExactScalar::from_int(2)), v(Var::W).scale(&ExactScalar::from_ratio(1, 2)));
    }
}
