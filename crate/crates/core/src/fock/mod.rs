//! The Fock space: polynomials in the creation operators `a_i(-m)`,
//! `b_j(-m)` tensored with the constrained group algebra of `P x P~`.

mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::{constraint_check, inner_p, inner_tilde, root_inner, WeightA, WeightC};
use crate::qscalar::{q_int, q_int_frac, ExactScalar, HalfExponent};

pub use text::parse_vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
}

/// A Heisenberg generator `a_i(m)` or `b_i(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeisenGen {
    pub family: Family,
    pub index: usize,
    pub mode: i64,
}

impl HeisenGen {
    pub fn a(index: usize, mode: i64) -> Self {
        HeisenGen {
            family: Family::A,
            index,
            mode,
        }
    }

    pub fn b(index: usize, mode: i64) -> Self {
        HeisenGen {
            family: Family::B,
            index,
            mode,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let max = match self.family {
            Family::A => n,
            Family::B => n - 1,
        };
        if self.index == 0 || self.index > max {
            return Err(Error::IndexOutOfRange {
                index: self.index,
                max,
            });
        }
        Ok(())
    }
}

/// A creation operator `a_i(-level)` or `b_i(-level)`, `level > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Creation {
    pub family: Family,
    pub index: usize,
    pub level: i64,
}

/// Basis element of the Fock space. The creation part is a sorted list of
/// `(generator, power)` with positive powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial {
    creation: Vec<(Creation, u32)>,
    lambda: WeightC,
    lambda_tilde: WeightA,
}

impl FockMonomial {
    pub fn new(creation: Vec<(Creation, u32)>, lambda: WeightC, lambda_tilde: WeightA) -> Result<Self> {
        if lambda.rank() != lambda_tilde.rank() {
            return Err(Error::RankMismatch(lambda.rank(), lambda_tilde.rank()));
        }
        if !constraint_check(&lambda, &lambda_tilde) {
            return Err(Error::ConstraintViolation(format!("{lambda} {lambda_tilde}")));
        }
        let n = lambda.rank();
        let mut merged: BTreeMap<Creation, u32> = BTreeMap::new();
        for (g, p) in creation {
            HeisenGen {
                family: g.family,
                index: g.index,
                mode: -g.level,
            }
            .validate(n)?;
            if g.level <= 0 {
                return Err(Error::Invalid(format!("creation level must be positive, got {}", g.level)));
            }
            if p > 0 {
                *merged.entry(g).or_default() += p;
            }
        }
        Ok(FockMonomial {
            creation: merged.into_iter().collect(),
            lambda,
            lambda_tilde,
        })
    }

    /// `e^lambda e^lambda~` with no oscillators.
    pub fn lattice(lambda: WeightC, lambda_tilde: WeightA) -> Result<Self> {
        FockMonomial::new(Vec::new(), lambda, lambda_tilde)
    }

    pub fn vacuum(n: usize) -> Self {
        FockMonomial {
            creation: Vec::new(),
            lambda: WeightC::zero(n),
            lambda_tilde: WeightA::zero(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn creation(&self) -> &[(Creation, u32)] {
        &self.creation
    }

    pub fn lambda(&self) -> &WeightC {
        &self.lambda
    }

    pub fn lambda_tilde(&self) -> &WeightA {
        &self.lambda_tilde
    }

    /// Sum of the levels of all creation operators.
    pub fn level(&self) -> i64 {
        self.creation.iter().map(|(g, p)| g.level * *p as i64).sum()
    }

    /// Same lattice part, new creation part (already sorted and positive).
    pub(crate) fn with_creation(&self, creation: Vec<(Creation, u32)>) -> Self {
        FockMonomial {
            creation,
            lambda: self.lambda.clone(),
            lambda_tilde: self.lambda_tilde.clone(),
        }
    }

    /// Shifts the lattice labels without checking the constraint.
    pub(crate) fn shifted_unchecked(&self, dl: &WeightC, dt: &WeightA) -> Self {
        FockMonomial {
            creation: self.creation.clone(),
            lambda: self.lambda.add(dl),
            lambda_tilde: self.lambda_tilde.add(dt),
        }
    }

    /// Multiplies in one creation operator.
    pub fn times(&self, g: Creation) -> Self {
        let mut c = self.creation.clone();
        insert_creation(&mut c, g, 1);
        self.with_creation(c)
    }
}

/// Adds `p` copies of `g` to a sorted creation list.
pub(crate) fn insert_creation(c: &mut Vec<(Creation, u32)>, g: Creation, p: u32) {
    match c.binary_search_by(|(h, _)| h.cmp(&g)) {
        Ok(pos) => c[pos].1 += p,
        Err(pos) => c.insert(pos, (g, p)),
    }
}

/// Finite linear combination of monomials; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<FockMonomial, ExactScalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum(n: usize) -> Self {
        FockVector::from_monomial(FockMonomial::vacuum(n))
    }

    pub fn from_monomial(m: FockMonomial) -> Self {
        FockVector::from_term(m, ExactScalar::one())
    }

    pub fn from_term(m: FockMonomial, c: ExactScalar) -> Self {
        let mut v = FockVector::zero();
        v.add_term(m, c);
        v
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

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (FockMonomial, ExactScalar)> {
        self.terms.into_iter()
    }

    /// The coefficient of `m`.
    pub fn coeff(&self, m: &FockMonomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Rank of the lattice labels, if the vector is nonzero.
    pub fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(FockMonomial::rank)
    }

    pub fn add_term(&mut self, m: FockMonomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &FockVector) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &FockVector, s: &ExactScalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.add_scaled(other, &ExactScalar::from_int(-1));
        v
    }

    pub fn scale(&self, s: &ExactScalar) -> FockVector {
        if s.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> FockVector {
        self.scale(&ExactScalar::from_int(-1))
    }

    /// Applies a per-monomial diagonal factor.
    pub fn map_diagonal(&self, f: impl Fn(&FockMonomial) -> ExactScalar) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &f(m));
        }
        out
    }

    /// Printed terms, one per monomial, in canonical order.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|(m, c)| text::format_term(m, c)).collect()
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_monomial(self))
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.term_strings().join(" + "))
    }
}

impl std::str::FromStr for FockVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_vector(s, None)
    }
}

/// The form the oscillators of one family are built on: `(alpha_i|alpha_j)`
/// for `A`, `(alpha~_i|alpha~_j)` for `B`.
pub fn family_form(n: usize, family: Family, i: usize, j: usize) -> Result<HalfExponent> {
    match family {
        Family::A => root_inner(n, i, j),
        Family::B => {
            if i == 0 || i >= n || j == 0 || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    max: n - 1,
                });
            }
            Ok(crate::lattice::gram_tilde(i, j))
        }
    }
}

/// `[g1, g2]`: `delta_(m+l,0) [(x_i|x_j) m][m] / m` within a family, zero
/// across families and on zero modes.
pub fn heis_bracket(n: usize, g1: HeisenGen, g2: HeisenGen) -> Result<ExactScalar> {
    g1.validate(n)?;
    g2.validate(n)?;
    if g1.family != g2.family || g1.mode + g2.mode != 0 || g1.mode == 0 {
        return Ok(ExactScalar::zero());
    }
    let m = g1.mode;
    let x = family_form(n, g1.family, g1.index, g2.index)?;
    let v = &q_int_frac(x, m) * &q_int(m, HalfExponent::ONE)?;
    Ok(&v * &ExactScalar::from_ratio(1, m))
}

/// Precomputed brackets `[h_i(k), h_j(-k)]` for one rank.
#[derive(Clone, Debug)]
pub struct FockSpace {
    n: usize,
    max_level: usize,
    // [family][i][j][k], indices from 1
    table: [Vec<Vec<Vec<ExactScalar>>>; 2],
}

impl FockSpace {
    pub fn new(n: usize) -> Result<Self> {
        FockSpace::with_max_level(n, 24)
    }

    pub fn with_max_level(n: usize, max_level: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        let mut table: [Vec<Vec<Vec<ExactScalar>>>; 2] = [Vec::new(), Vec::new()];
        for (fi, fam) in [Family::A, Family::B].into_iter().enumerate() {
            let size = if fam == Family::A { n } else { n - 1 };
            let mut t = vec![vec![Vec::new(); size + 1]; size + 1];
            for i in 1..=size {
                for j in 1..=size {
                    let mut row = vec![ExactScalar::zero()];
                    for k in 1..=max_level as i64 {
                        let g1 = HeisenGen { family: fam, index: i, mode: k };
                        let g2 = HeisenGen { family: fam, index: j, mode: -k };
                        row.push(heis_bracket(n, g1, g2)?);
                    }
                    t[i][j] = row;
                }
            }
            table[fi] = t;
        }
        Ok(FockSpace { n, max_level, table })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `[h_i(k), h_j(-k)]` for `k > 0`.
    pub fn bracket(&self, family: Family, i: usize, j: usize, k: i64) -> ExactScalar {
        let fi = usize::from(family == Family::B);
        if (k as usize) <= self.max_level {
            self.table[fi][i][j][k as usize].clone()
        } else {
            heis_bracket(self.n, HeisenGen { family, index: i, mode: k }, HeisenGen { family, index: j, mode: -k })
                .expect("validated indices")
        }
    }

    fn check_vector(&self, v: &FockVector) -> Result<()> {
        match v.rank() {
            Some(r) if r != self.n => Err(Error::RankMismatch(self.n, r)),
            _ => Ok(()),
        }
    }

    /// Action of a Heisenberg generator. Creation multiplies; annihilation is
    /// the derivation given by the bracket; zero modes act diagonally.
    pub fn apply_heisenberg(&self, g: HeisenGen, v: &FockVector) -> Result<FockVector> {
        g.validate(self.n)?;
        self.check_vector(v)?;
        if g.mode == 0 {
            return Ok(match g.family {
                Family::A => zero_mode_a(g.index, v),
                Family::B => zero_mode_b(g.index, v),
            });
        }
        let mut out = FockVector::zero();
        if g.mode < 0 {
            let c = Creation {
                family: g.family,
                index: g.index,
                level: -g.mode,
            };
            for (m, s) in v.terms() {
                out.add_term(m.times(c), s.clone());
            }
            return Ok(out);
        }
        let k = g.mode;
        for (m, s) in v.terms() {
            for (pos, (c, p)) in m.creation.iter().enumerate() {
                if c.family != g.family || c.level != k {
                    continue;
                }
                let br = self.bracket(g.family, g.index, c.index, k);
                if br.is_zero() {
                    continue;
                }
                let mut cre = m.creation.clone();
                if *p == 1 {
                    cre.remove(pos);
                } else {
                    cre[pos].1 -= 1;
                }
                let coef = &(s * &br) * &ExactScalar::from_int(*p as i64);
                out.add_term(m.with_creation(cre), coef);
            }
        }
        Ok(out)
    }
}

/// `a_i(0)`: eigenvalue `(alpha_i|lambda)`.
pub fn zero_mode_a(i: usize, v: &FockVector) -> FockVector {
    v.map_diagonal(|m| half_scalar(m.lambda.pair_simple(i)))
}

/// `b_j(0)`: eigenvalue `(alpha~_j|lambda~)`.
pub fn zero_mode_b(j: usize, v: &FockVector) -> FockVector {
    v.map_diagonal(|m| half_scalar(m.lambda_tilde.pair_simple(j)))
}

fn half_scalar(h: HalfExponent) -> ExactScalar {
    ExactScalar::from_ratio(h.doubled(), 2)
}

/// `e^(dl) e^(dt)` applied to every monomial.
pub fn translate(dl: &WeightC, dt: &WeightA, v: &FockVector) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (m, c) in v.terms() {
        if dl.rank() != m.rank() || dt.rank() != m.rank() {
            return Err(Error::RankMismatch(m.rank(), dl.rank()));
        }
        let shifted = m.shifted_unchecked(dl, dt);
        if !constraint_check(&shifted.lambda, &shifted.lambda_tilde) {
            return Err(Error::ConstraintViolation(format!(
                "{} {}",
                shifted.lambda, shifted.lambda_tilde
            )));
        }
        out.add_term(shifted, c.clone());
    }
    Ok(out)
}

/// `(-1)^(2 a_j(0))`.
pub fn sign_two_a(j: usize, v: &FockVector) -> FockVector {
    v.map_diagonal(|m| ExactScalar::from_int(parity_sign(m.lambda.pair_simple(j).doubled())))
}

pub(crate) fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Degree of a monomial, `-(levels + (lambda|lambda)/2 + (lambda~|lambda~)/2)`.
pub fn monomial_grade(m: &FockMonomial) -> Ratio<i64> {
    let lam = inner_p(&m.lambda, &m.lambda).expect("same rank");
    let lt = inner_tilde(&m.lambda_tilde, &m.lambda_tilde).expect("same rank");
    -(Ratio::from_integer(m.level()) + lam.to_ratio() / 2 + lt / 2)
}

/// The common degree of all monomials of `v`.
pub fn grade(v: &FockVector) -> Result<Ratio<i64>> {
    let mut it = v.terms().map(|(m, _)| monomial_grade(m));
    let first = it.next().ok_or(Error::NotHomogeneous("the degree operator (zero vector)"))?;
    if it.all(|g| g == first) {
        Ok(first)
    } else {
        Err(Error::NotHomogeneous("the degree operator"))
    }
}

/// `((alpha_1|lambda), ..., (alpha_n|lambda))` and the level, which is 1.
pub fn weight(v: &FockVector) -> Result<(Vec<HalfExponent>, i64)> {
    let mut it = v.terms().map(|(m, _)| {
        (1..=m.rank()).map(|i| m.lambda.pair_simple(i)).collect::<Vec<_>>()
    });
    let first = it.next().ok_or(Error::NotHomogeneous("the zero modes (zero vector)"))?;
    if it.all(|w| w == first) {
        Ok((first, 1))
    } else {
        Err(Error::NotHomogeneous("the zero modes"))
    }
}

#[cfg(test)]
mod tests;
