//! Weight and root lattices of type `C_n`, the auxiliary `A_(n-1)` copy, and
//! the quasi-cocycle.
//!
//! `P` has basis `e_1..e_n` with `(e_i|e_j) = delta_ij / 2`. Simple roots are
//! `alpha_i = e_i - e_(i+1)` for `i < n` and `alpha_n = 2 e_n`.

use std::fmt;

use num_rational::Ratio;
use serde_json::json;

use crate::error::{Error, Result};
use crate::qscalar::HalfExponent;
use crate::verify::report::{CheckRecord, VerificationReport};

/// Element of `P`, in `e`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightC {
    coords: Vec<i64>,
}

/// Element of `P~`, stored by its doubled pairings `t_j = 2(alpha~_j|lambda~)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightA {
    t: Vec<i64>,
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, max: n })
    } else {
        Ok(())
    }
}

impl WeightC {
    pub fn new(coords: Vec<i64>) -> Self {
        WeightC { coords }
    }

    pub fn zero(n: usize) -> Self {
        WeightC { coords: vec![0; n] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn simple_root(n: usize, i: usize) -> Result<Self> {
        check_index(i, n)?;
        let mut c = vec![0; n];
        if i < n {
            c[i - 1] = 1;
            c[i] = -1;
        } else {
            c[n - 1] = 2;
        }
        Ok(WeightC { coords: c })
    }

    /// `lambda_i = e_1 + ... + e_i`; `lambda_0 = 0`.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut c = vec![0; n];
        c[..i].fill(1);
        Ok(WeightC { coords: c })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightC {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        WeightC {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// `(alpha_i|self)`.
    pub fn pair_simple(&self, i: usize) -> HalfExponent {
        let n = self.rank();
        if i < n {
            HalfExponent::from_doubled(self.coords[i - 1] - self.coords[i])
        } else {
            HalfExponent::int(self.coords[n - 1])
        }
    }

    /// Coordinates in the simple-root basis, if `self` lies in `Q`.
    pub fn root_coords(&self) -> Option<Vec<i64>> {
        let n = self.rank();
        let total: i64 = self.coords.iter().sum();
        if total % 2 != 0 {
            return None;
        }
        let mut r = Vec::with_capacity(n);
        let mut acc = 0;
        for &m in &self.coords[..n - 1] {
            acc += m;
            r.push(acc);
        }
        r.push(total / 2);
        Some(r)
    }

    /// `sum_j r_j alpha_j`.
    pub fn from_root_coords(r: &[i64]) -> Self {
        let n = r.len();
        let mut c = vec![0; n];
        for (j, &rj) in r.iter().enumerate() {
            if j + 1 < n {
                c[j] += rj;
                c[j + 1] -= rj;
            } else {
                c[n - 1] += 2 * rj;
            }
        }
        WeightC { coords: c }
    }
}

impl WeightA {
    pub fn new(t: Vec<i64>) -> Self {
        WeightA { t }
    }

    /// The zero element for rank `n` (so `n - 1` pairings).
    pub fn zero(n: usize) -> Self {
        WeightA { t: vec![0; n - 1] }
    }

    pub fn pairings(&self) -> &[i64] {
        &self.t
    }

    /// Rank `n` of the `C_n` data this belongs to.
    pub fn rank(&self) -> usize {
        self.t.len() + 1
    }

    /// `alpha~_i`; `alpha~_n = 0`.
    pub fn simple_root(n: usize, i: usize) -> Result<Self> {
        check_index(i, n)?;
        let mut t = vec![0; n - 1];
        if i < n {
            t[i - 1] = 2;
            if i >= 2 {
                t[i - 2] = -1;
            }
            if i < n - 1 {
                t[i] = -1;
            }
        }
        Ok(WeightA { t })
    }

    /// `lambda~_i` for `i < n`; zero for `i = 0` and `i = n`.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut t = vec![0; n - 1];
        if i >= 1 && i < n {
            t[i - 1] = 1;
        }
        Ok(WeightA { t })
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightA {
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        WeightA {
            t: self.t.iter().map(|a| a * k).collect(),
        }
    }

    /// `(alpha~_j|self)`, zero for `j = n`.
    pub fn pair_simple(&self, j: usize) -> HalfExponent {
        if j <= self.t.len() {
            HalfExponent::from_doubled(self.t[j - 1])
        } else {
            HalfExponent::ZERO
        }
    }
}

impl fmt::Display for WeightC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{}]", join(&self.coords))
    }
}

impl fmt::Display for WeightA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}]", join(&self.t))
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `(lambda|mu)` on `P`.
pub fn inner_p(a: &WeightC, b: &WeightC) -> Result<HalfExponent> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(HalfExponent::from_doubled(a.coords.iter().zip(&b.coords).map(|(x, y)| x * y).sum()))
}

/// `(lambda~|mu~)` on `P~`.
///
/// The Gram matrix of `A_(n-1)` here is half the Cartan matrix, whose inverse
/// has entries `min(i,j)(n - max(i,j))/n`, so the form is
/// `(1/2) sum t_i s_j min(i,j)(n - max(i,j))/n`.
pub fn inner_tilde(a: &WeightA, b: &WeightA) -> Result<Ratio<i64>> {
    if a.t.len() != b.t.len() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    let n = a.rank() as i64;
    let mut acc = 0i64;
    for (i, &ti) in a.t.iter().enumerate() {
        for (j, &sj) in b.t.iter().enumerate() {
            let (i1, j1) = (i as i64 + 1, j as i64 + 1);
            acc += ti * sj * i1.min(j1) * (n - i1.max(j1));
        }
    }
    Ok(Ratio::new(acc, 2 * n))
}

/// `(alpha~_i|alpha~_j)` for `i, j < n`.
pub fn gram_tilde(i: usize, j: usize) -> HalfExponent {
    if i == j {
        HalfExponent::ONE
    } else if i.abs_diff(j) == 1 {
        HalfExponent::from_doubled(-1)
    } else {
        HalfExponent::ZERO
    }
}

/// `(alpha_i|alpha_j)`.
pub fn root_inner(n: usize, i: usize, j: usize) -> Result<HalfExponent> {
    inner_p(&WeightC::simple_root(n, i)?, &WeightC::simple_root(n, j)?)
}

/// `d_i = (alpha_i|alpha_i)/2`.
pub fn d(n: usize, i: usize) -> Result<HalfExponent> {
    check_index(i, n)?;
    Ok(if i == n { HalfExponent::ONE } else { HalfExponent::HALF })
}

/// Cartan entry `A_ij = (alpha_i|alpha_j)/d_i`.
pub fn cartan(n: usize, i: usize, j: usize) -> Result<i64> {
    let ip = root_inner(n, i, j)?;
    let di = d(n, i)?;
    Ok(ip.doubled() / di.doubled())
}

/// Parity projection of `sum m_i alpha_i` onto the `alpha~` basis.
pub fn bar(m: &[i64]) -> Vec<i64> {
    m[..m.len().saturating_sub(1)].iter().map(|x| x.rem_euclid(2)).collect()
}

/// `(x|y)` for vectors in the `alpha~` basis.
pub fn tilde_form_root_coords(x: &[i64], y: &[i64]) -> HalfExponent {
    let mut acc = HalfExponent::ZERO;
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            acc += gram_tilde(i, j) * (a * b);
        }
    }
    acc
}

/// The table value `epsilon(alpha_i, alpha_j)`.
pub fn eps_simple(n: usize, i: usize, j: usize) -> Result<i64> {
    check_index(i, n)?;
    check_index(j, n)?;
    Ok(match i.cmp(&j) {
        std::cmp::Ordering::Equal => -1,
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Greater => sign_pow(cartan(n, i, j)?),
    })
}

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Coset section `P = {0, lambda_1} + Q`: returns the root coordinates of
/// `lambda - base`.
fn section(lambda: &WeightC) -> Vec<i64> {
    match lambda.root_coords() {
        Some(r) => r,
        None => {
            let base = WeightC::fundamental(lambda.rank(), 1).expect("rank >= 1");
            lambda.sub(&base).root_coords().expect("shifted into Q")
        }
    }
}

/// `epsilon(alpha_i, lambda)`, multiplicative in `lambda`, with value `+1` on
/// the coset representatives `0` and `lambda_1`.
pub fn eps_char(i: usize, lambda: &WeightC) -> Result<i64> {
    let n = lambda.rank();
    check_index(i, n)?;
    let r = section(lambda);
    let mut s = 1;
    for (j, &rj) in r.iter().enumerate() {
        if rj.rem_euclid(2) == 1 {
            s *= eps_simple(n, i, j + 1)?;
        }
    }
    Ok(s)
}

/// `epsilon(alpha, theta)` for `alpha = sum s_i alpha_i` in `Q`, extended
/// from the characters by the second quasi-cocycle axiom. `theta` must lie in
/// `Q`, given in root coordinates.
pub fn eps_root(n: usize, s: &[i64], theta: &[i64]) -> Result<i64> {
    let th = WeightC::from_root_coords(theta);
    let mut sign = 1;
    for (i, &si) in s.iter().enumerate() {
        if si.rem_euclid(2) == 1 {
            sign *= eps_char(i + 1, &th)?;
        }
    }
    let sbar = bar(s);
    let unreduced = &s[..n - 1];
    let diff: Vec<i64> = sbar.iter().zip(unreduced).map(|(a, b)| a - b).collect();
    let e = tilde_form_root_coords(&diff, &bar(theta));
    let e = e.as_integer().ok_or_else(|| Error::Invalid("non-integral cocycle exponent".into()))?;
    Ok(sign * sign_pow(e))
}

/// Fock constraint: `(alpha_i|lambda) +- (alpha~_i|lambda~)` is an integer
/// for every `i`, i.e. `m_i - m_(i+1) = t_i (mod 2)`.
pub fn constraint_check(lambda: &WeightC, lt: &WeightA) -> bool {
    if lambda.rank() != lt.rank() {
        return false;
    }
    lt.t.iter()
        .enumerate()
        .all(|(i, &t)| (lambda.coords[i] - lambda.coords[i + 1] - t).rem_euclid(2) == 0)
}

/// Zero, the simple roots and all sums of two simple roots, in root
/// coordinates.
fn small_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; n]];
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        out.push(v);
    }
    for i in 0..n {
        for j in i..n {
            let mut v = vec![0; n];
            v[i] += 1;
            v[j] += 1;
            out.push(v);
        }
    }
    out
}

fn root_label(s: &[i64]) -> String {
    format!("[{}]", join(s))
}

fn add_coords(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `(-1)^(bar(a+b) - bar(a) - bar(b) | bar(theta))`.
fn bar_defect(a: &[i64], b: &[i64], theta: &[i64]) -> Result<i64> {
    let ab = bar(&add_coords(a, b));
    let (ba, bb) = (bar(a), bar(b));
    let diff: Vec<i64> = (0..ab.len()).map(|k| ab[k] - ba[k] - bb[k]).collect();
    let e = tilde_form_root_coords(&diff, &bar(theta));
    e.as_integer()
        .map(sign_pow)
        .ok_or_else(|| Error::Invalid("non-integral cocycle exponent".into()))
}

/// The explicit table, the four quasi-cocycle axioms on zero, simple roots and
/// sums of two simple roots, and the commutation table of the twisted
/// translations `e^(alpha_i) epsilon_i` on a window of `P`.
pub fn check_quasi_cocycle_axioms(n: usize) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let mut rep = VerificationReport::new("cocycle", Some(n));

    for i in 1..=n {
        for j in 1..=n {
            rep.push(CheckRecord::timed("cocycle.table", json!({"i": i, "j": j}), || {
                let prod = eps_simple(n, i, j).unwrap() * eps_simple(n, j, i).unwrap();
                let ip = root_inner(n, i, j).unwrap();
                let e = if i < n && j < n { ip.doubled() } else { ip.as_integer().unwrap() };
                let expect = sign_pow(e);
                let ch = eps_char(i, &WeightC::simple_root(n, j).unwrap()).unwrap();
                let mut res = Vec::new();
                if prod != expect {
                    res.push(format!("product {prod}, expected {expect}"));
                }
                if ch != eps_simple(n, i, j).unwrap() {
                    res.push(format!("character value {ch} disagrees with the table"));
                }
                res
            }));
        }
    }

    let set = small_roots(n);
    for a in &set {
        for b in &set {
            let params = json!({"alpha": root_label(a), "beta": root_label(b)});
            rep.push(CheckRecord::timed("cocycle.axiom1", params.clone(), || {
                let mut res = Vec::new();
                for th in &set {
                    let lhs = eps_root(n, a, &add_coords(b, th)).unwrap();
                    let rhs = eps_root(n, a, b).unwrap() * eps_root(n, a, th).unwrap();
                    if lhs != rhs {
                        res.push(format!("theta {}", root_label(th)));
                    }
                }
                res
            }));
            rep.push(CheckRecord::timed("cocycle.axiom2", params.clone(), || {
                let mut res = Vec::new();
                for th in &set {
                    let lhs = eps_root(n, &add_coords(a, b), th).unwrap();
                    let rhs = eps_root(n, a, th).unwrap()
                        * eps_root(n, b, th).unwrap()
                        * bar_defect(a, b, th).unwrap();
                    if lhs != rhs {
                        res.push(format!("theta {}", root_label(th)));
                    }
                }
                res
            }));
            rep.push(CheckRecord::timed("cocycle.axiom3", params.clone(), || {
                let lhs = eps_root(n, a, b).unwrap() * eps_root(n, b, a).unwrap();
                let wa = WeightC::from_root_coords(a);
                let wb = WeightC::from_root_coords(b);
                let e = inner_p(&wa, &wb).unwrap() + tilde_form_root_coords(&bar(a), &bar(b));
                match e.as_integer() {
                    Some(e) if sign_pow(e) == lhs => vec![],
                    Some(e) => vec![format!("product {lhs}, exponent {e}")],
                    None => vec![format!("half-integral exponent {e}")],
                }
            }));
            rep.push(CheckRecord::timed("cocycle.axiom4", params, || {
                let mut res = Vec::new();
                for th in &set {
                    let lhs = eps_root(n, a, &add_coords(b, th)).unwrap() * eps_root(n, b, th).unwrap();
                    let rhs = eps_root(n, a, b).unwrap()
                        * eps_root(n, &add_coords(a, b), th).unwrap()
                        * bar_defect(a, b, th).unwrap();
                    if lhs != rhs {
                        res.push(format!("theta {}", root_label(th)));
                    }
                }
                res
            }));
        }
    }

    let window = lattice_window(n, 1);
    for i in 1..=n {
        for j in 1..=n {
            rep.push(CheckRecord::timed("cocycle.operator_table", json!({"i": i, "j": j}), || {
                operator_table_residual(n, i, j, &window).unwrap()
            }));
        }
    }
    Ok(rep)
}

/// All `lambda` with every coordinate in `-b..=b`.
pub fn lattice_window(n: usize, b: i64) -> Vec<WeightC> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for c in -b..=b {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(WeightC::new).collect()
}

/// Compares `T_i T_j` with the stated sign times `T_j T_i` where
/// `T_i = e^(alpha_i) epsilon_i`. On its own `epsilon_i` is diagonal, so the
/// stated commutation signs only become visible once each sign operator is
/// paired with its translation, as it is inside the vertex operators.
fn operator_table_residual(n: usize, i: usize, j: usize, window: &[WeightC]) -> Result<Vec<String>> {
    let ai = WeightC::simple_root(n, i)?;
    let aj = WeightC::simple_root(n, j)?;
    let ip = root_inner(n, i, j)?;
    let stated = if i < n && j < n {
        sign_pow(ip.doubled())
    } else {
        sign_pow(ip.as_integer().expect("integral"))
    };
    let mut res = Vec::new();
    for lam in window {
        let lhs = eps_char(j, lam)? * eps_char(i, &lam.add(&aj))?;
        let rhs = eps_char(i, lam)? * eps_char(j, &lam.add(&ai))?;
        if lhs != stated * rhs {
            res.push(format!("{lam}"));
        }
    }
    Ok(res)
}
