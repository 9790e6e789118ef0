//! Modes of the vertex operators `X_i^(+-)(z) = Y_i^(+-)(z) Z_i^(+-)(z)` and
//! of `psi_i(z)`, `phi_i(z)`, applied to Fock vectors in closed form.
//!
//! For one monomial the annihilation exponentials substitute
//! `h_j(-l) -> h_j(-l) + s z^(-l)` in its finitely many oscillators, the zero
//! modes contribute a fixed power of `z`, and the creation exponentials
//! contribute the coefficient of the one remaining power of `z`, a sum over
//! two-coloured partitions.

mod ops;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fock::{insert_creation, Creation, Family, FockSpace, FockVector, HeisenGen};
use crate::lattice::{eps_char, WeightA, WeightC};
use crate::qscalar::{q_int, ExactScalar, HalfExponent};

pub use ops::{parse_operators, BracketSpec, ModeKind, ModeOp, Operator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// Argument shifts of the two summands of `Z_i^(+-)`.
///
/// `Uniform` uses `U_i(q^(1/2) z) + (-1)^(2a_i(0)) U_i^*(q^(-1/2) z)` for both
/// signs, which is what the commutator computation for `[X^+, X^-]` expands.
/// `Displayed` flips both shifts for `X^-`:
/// `U_i(q^(-1/2) z) + (-1)^(2a_i(0)) U_i^*(q^(1/2) z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ZConvention {
    #[default]
    Uniform,
    Displayed,
}

impl ZConvention {
    /// Doubled exponent `2c` of the shift `q^c` for sign `s` and branch `e`.
    fn shift_doubled(self, s: i64, e: i64) -> i64 {
        match self {
            ZConvention::Uniform => e,
            ZConvention::Displayed => s * e,
        }
    }
}

/// Overall normalization of `X_i^(+-)(z)`.
///
/// `Literal` is `Y_i^(+-)(z) Z_i^(+-)(z)` exactly as written. On it the
/// commutator `[X_i^+(z), X_i^-(w)]` comes out multiplied by
/// `eps(a_i, a_i) (-1)^(2a_i(0)) = -(-1)^(2a_i(0))`. `Repaired` multiplies
/// `X_i^-` by `-(-1)^(2a_i(0))`, which restores the commutator and leaves
/// every relation homogeneous in the `X^-` unchanged, and also rescales
/// `X_i^(+-)` by `q^(+-1/4)` for `i < n`, a diagonal rescaling that fixes the
/// phase of `X_i^-(0) e^(lambda_i) e^(lambda~_i)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Normalization {
    Literal,
    #[default]
    Repaired,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct CreKey {
    sigma: i64,
    eps: i64,
    c2: i64,
    total: i64,
}

/// One term of a creation expansion: `(family, level, multiplicity)` list and
/// its coefficient.
type CreTerm = (Vec<(Family, i64, u32)>, ExactScalar);

/// Operator data for one rank.
#[derive(Debug)]
pub struct Realization {
    fock: FockSpace,
    z: ZConvention,
    norm: Normalization,
    inv_qint: Vec<ExactScalar>,
    cre_cache: Mutex<HashMap<CreKey, Arc<Vec<CreTerm>>>>,
}

const TABLE_LEVELS: usize = 24;

impl Realization {
    pub fn new(n: usize) -> Result<Self> {
        Realization::with_convention(n, ZConvention::default())
    }

    pub fn with_convention(n: usize, z: ZConvention) -> Result<Self> {
        Realization::with_options(n, z, Normalization::default())
    }

    pub fn with_options(n: usize, z: ZConvention, norm: Normalization) -> Result<Self> {
        let fock = FockSpace::with_max_level(n, TABLE_LEVELS)?;
        let mut inv_qint = vec![ExactScalar::zero()];
        for k in 1..=TABLE_LEVELS as i64 {
            inv_qint.push(q_int(k, HalfExponent::ONE)?.inv()?);
        }
        Ok(Realization {
            fock,
            z,
            norm,
            inv_qint,
            cre_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.fock.rank()
    }

    pub fn fock(&self) -> &FockSpace {
        &self.fock
    }

    pub fn convention(&self) -> ZConvention {
        self.z
    }

    pub fn normalization(&self) -> Normalization {
        self.norm
    }

    fn inv_q(&self, k: i64) -> ExactScalar {
        match self.inv_qint.get(k as usize) {
            Some(v) => v.clone(),
            None => q_int(k, HalfExponent::ONE).and_then(|x| x.inv()).expect("k > 0"),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        let n = self.rank();
        if i == 0 || i > n {
            Err(Error::IndexOutOfRange { index: i, max: n })
        } else {
            Ok(())
        }
    }

    fn check_vector(&self, v: &FockVector) -> Result<()> {
        match v.rank() {
            Some(r) if r != self.rank() => Err(Error::RankMismatch(self.rank(), r)),
            _ => Ok(()),
        }
    }

    /// `x^(+-)_(i,k) v`.
    pub fn apply_x_mode(&self, sign: Sign, i: usize, k: i64, v: &FockVector) -> Result<FockVector> {
        self.check_index(i)?;
        self.check_vector(v)?;
        let mut out = FockVector::zero();
        if i == self.rank() {
            self.x_branch(sign, i, k, None, v, &mut out);
        } else {
            for e in [Sign::Plus, Sign::Minus] {
                self.x_branch(sign, i, k, Some(e), v, &mut out);
            }
        }
        Ok(out)
    }

    /// One summand `X^(+-)_(i,e)` of `X^(+-)_i = X^(+-)_(i+) + X^(+-)_(i-)`, for
    /// `i < n`.
    pub fn apply_x_mode_split(&self, sign: Sign, i: usize, k: i64, branch: Sign, v: &FockVector) -> Result<FockVector> {
        self.check_index(i)?;
        self.check_vector(v)?;
        if i == self.rank() {
            return Err(Error::Invalid(format!("X_{i} has no branch decomposition")));
        }
        let mut out = FockVector::zero();
        self.x_branch(sign, i, k, Some(branch), v, &mut out);
        Ok(out)
    }

    fn x_branch(&self, sign: Sign, i: usize, k: i64, branch: Option<Sign>, v: &FockVector, out: &mut FockVector) {
        let n = self.rank();
        let s = sign.value();
        let e = branch.map_or(0, Sign::value);
        let c2 = if branch.is_some() { self.z.shift_doubled(s, e) } else { 0 };
        let alpha = WeightC::simple_root(n, i).expect("checked index").scale(s);
        let alpha_t = if branch.is_some() {
            WeightA::simple_root(n, i).expect("checked index").scale(e)
        } else {
            WeightA::zero(n)
        };
        for (m, coef) in v.terms() {
            let lam = m.lambda();
            let pair2 = lam.pair_simple(i).doubled();
            let t = if branch.is_some() { m.lambda_tilde().pairings()[i - 1] } else { 0 };
            let p2 = s * pair2 + e * t;
            debug_assert!(p2 % 2 == 0, "Fock constraint guarantees integral exponents");
            let p0 = p2 / 2;
            let mut sign0 = eps_char(i, lam).expect("checked index");
            if e == -1 && pair2.rem_euclid(2) == 1 {
                sign0 = -sign0;
            }
            let mut u0 = 0;
            if self.norm == Normalization::Repaired {
                if s == -1 && pair2.rem_euclid(2) == 0 {
                    sign0 = -sign0;
                }
                if i < n {
                    u0 = s;
                }
            }
            let mut s0 = coef * &ExactScalar::from_int(sign0);
            // (q^c z)^(e b_i(0)) contributes q^(c e t/2) = u^(2c e t)
            if u0 + c2 * e * t != 0 {
                s0 = &s0 * &ExactScalar::u_pow(u0 + c2 * e * t);
            }
            let target = m.shifted_unchecked(&alpha, &alpha_t);
            let ann = self.annihilate(m.creation(), |fam, j, l| match fam {
                Family::A => {
                    let c = &ExactScalar::u_pow(-2 * s * l) * &self.inv_q(l);
                    let br = self.fock.bracket(Family::A, i, j, l);
                    -(&(&c * &br) * &ExactScalar::from_int(s))
                }
                Family::B if e != 0 => {
                    let c = &ExactScalar::u_pow(-c2 * 2 * l) * &self.inv_q(l);
                    let br = self.fock.bracket(Family::B, i, j, l);
                    -(&(&c * &br) * &ExactScalar::from_int(e))
                }
                Family::B => ExactScalar::zero(),
            });
            for (rest, a_coef, removed) in ann {
                let total = -k - 1 - p0 + removed;
                if total < 0 {
                    continue;
                }
                let cre = self.creation_terms(CreKey {
                    sigma: s,
                    eps: e,
                    c2,
                    total,
                });
                let base = &s0 * &a_coef;
                for (gens, c) in cre.iter() {
                    let mut cl = rest.clone();
                    for &(fam, level, mult) in gens {
                        insert_creation(&mut cl, Creation { family: fam, index: i, level }, mult);
                    }
                    out.add_term(target.with_creation(cl), &base * c);
                }
            }
        }
    }

    /// Expands `exp(sum_l s(h, l) h(l) z^-l)` on a creation list: each
    /// oscillator `g` of power `p` becomes `(g + s_g z^-l)^p`. Returns
    /// `(remaining oscillators, coefficient, total removed level)`.
    fn annihilate(
        &self,
        creation: &[(Creation, u32)],
        scalar: impl Fn(Family, usize, i64) -> ExactScalar,
    ) -> Vec<(Vec<(Creation, u32)>, ExactScalar, i64)> {
        let mut acc: Vec<(Vec<(Creation, u32)>, ExactScalar, i64)> = vec![(Vec::new(), ExactScalar::one(), 0)];
        for &(g, p) in creation {
            let sg = scalar(g.family, g.index, g.level);
            let mut next = Vec::with_capacity(acc.len() * (p as usize + 1));
            for (rest, c, r) in &acc {
                let mut cl = rest.clone();
                cl.push((g, p));
                next.push((cl, c.clone(), *r));
                if sg.is_zero() {
                    continue;
                }
                let mut pw = ExactScalar::one();
                for take in 1..=p {
                    pw = &pw * &sg;
                    let coef = &(c * &pw) * &ExactScalar::from_int(binom(p, take));
                    let mut cl = rest.clone();
                    if take < p {
                        cl.push((g, p - take));
                    }
                    next.push((cl, coef, r + take as i64 * g.level));
                }
            }
            acc = next;
        }
        acc
    }

    fn creation_terms(&self, key: CreKey) -> Arc<Vec<CreTerm>> {
        if let Some(v) = self.cre_cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let total = key.total;
        let mut colors: Vec<(Family, Vec<ExactScalar>)> = Vec::new();
        let da: Vec<ExactScalar> = (0..=total)
            .map(|k| {
                if k == 0 {
                    return ExactScalar::zero();
                }
                let c = &ExactScalar::u_pow(-2 * key.sigma * k) * &self.inv_q(k);
                &c * &ExactScalar::from_int(key.sigma)
            })
            .collect();
        colors.push((Family::A, da));
        if key.eps != 0 {
            let db: Vec<ExactScalar> = (0..=total)
                .map(|k| {
                    if k == 0 {
                        return ExactScalar::zero();
                    }
                    let c = &ExactScalar::u_pow(2 * key.c2 * k) * &self.inv_q(k);
                    &c * &ExactScalar::from_int(key.eps)
                })
                .collect();
            colors.push((Family::B, db));
        }
        let terms = Arc::new(exp_coefficient(total, &colors));
        self.cre_cache.lock().expect("cache lock").insert(key, terms.clone());
        terms
    }

    /// `psi_(i,m) = K_i [z^-m] exp((q - q^-1) sum a_i(k) z^-k)`; zero for `m < 0`.
    pub fn apply_psi_mode(&self, i: usize, m: i64, v: &FockVector) -> Result<FockVector> {
        self.check_index(i)?;
        self.check_vector(v)?;
        let mut out = FockVector::zero();
        if m < 0 {
            return Ok(out);
        }
        let qq = self.q_minus_qinv();
        for (mono, coef) in v.terms() {
            let k = ExactScalar::q_pow(mono.lambda().pair_simple(i));
            let ann = self.annihilate(mono.creation(), |fam, j, l| match fam {
                Family::A => &qq * &self.fock.bracket(Family::A, i, j, l),
                Family::B => ExactScalar::zero(),
            });
            for (rest, c, removed) in ann {
                if removed == m {
                    out.add_term(mono.with_creation(rest), &(coef * &c) * &k);
                }
            }
        }
        Ok(out)
    }

    /// `phi_(i,m) = K_i^-1 [z^-m] exp(-(q - q^-1) sum a_i(-k) z^k)`; zero for
    /// `m > 0`.
    pub fn apply_phi_mode(&self, i: usize, m: i64, v: &FockVector) -> Result<FockVector> {
        self.check_index(i)?;
        self.check_vector(v)?;
        let mut out = FockVector::zero();
        if m > 0 {
            return Ok(out);
        }
        let total = -m;
        let d: Vec<ExactScalar> = (0..=total)
            .map(|k| if k == 0 { ExactScalar::zero() } else { -self.q_minus_qinv() })
            .collect();
        let terms = exp_coefficient(total, &[(Family::A, d)]);
        for (mono, coef) in v.terms() {
            let kinv = ExactScalar::q_pow(-mono.lambda().pair_simple(i));
            let base = coef * &kinv;
            for (gens, c) in &terms {
                let mut cl = mono.creation().to_vec();
                for &(fam, level, mult) in gens {
                    insert_creation(&mut cl, Creation { family: fam, index: i, level }, mult);
                }
                out.add_term(mono.with_creation(cl), &base * c);
            }
        }
        Ok(out)
    }

    fn q_minus_qinv(&self) -> ExactScalar {
        &ExactScalar::u_pow(4) - &ExactScalar::u_pow(-4)
    }

    /// `K_i^p = q^(p a_i(0))`.
    pub fn apply_k(&self, i: usize, p: i64, v: &FockVector) -> Result<FockVector> {
        self.check_index(i)?;
        self.check_vector(v)?;
        Ok(v.map_diagonal(|m| ExactScalar::q_pow(m.lambda().pair_simple(i) * p)))
    }

    /// `a_i(k)`, including the zero mode.
    pub fn apply_a(&self, i: usize, k: i64, v: &FockVector) -> Result<FockVector> {
        self.fock.apply_heisenberg(HeisenGen::a(i, k), v)
    }

    /// `e_i = x^+_(i,0)`.
    pub fn chevalley_e(&self, i: usize, v: &FockVector) -> Result<FockVector> {
        self.apply_x_mode(Sign::Plus, i, 0, v)
    }

    /// `e_0 = [x^-_(1,0), ..., x^-_(n,0), ..., x^-_(2,0), x^-_(1,1)]_(v...) gamma K_theta^-1`
    /// with `gamma = q` and `K_theta = K_1^2 ... K_(n-1)^2 K_n`.
    pub fn apply_e0(&self, v: &FockVector, spec: &BracketSpec) -> Result<FockVector> {
        self.check_vector(v)?;
        let n = self.rank();
        if spec.ops.len() != spec.params.len() + 1 {
            return Err(Error::Invalid(format!(
                "bracket needs one parameter fewer than operators, got {} and {}",
                spec.ops.len(),
                spec.params.len()
            )));
        }
        let q = ExactScalar::q_pow(HalfExponent::ONE);
        let start = v.map_diagonal(|m| {
            let mut e = HalfExponent::ZERO;
            for j in 1..=n {
                let w = if j < n { 2 } else { 1 };
                e += m.lambda().pair_simple(j) * w;
            }
            &q * &ExactScalar::q_pow(-e)
        });
        self.apply_bracket(&spec.ops, &spec.params, &start)
    }

    /// Right-nested q-multibracket `[a_1, [a_2, ..., a_m]]`, where the bracket
    /// with `a_k` carries `params[m - 1 - k]` (0-based `k`).
    pub fn apply_bracket(&self, ops: &[ModeOp], params: &[ExactScalar], v: &FockVector) -> Result<FockVector> {
        let m = ops.len();
        if m == 0 {
            return Ok(v.clone());
        }
        let mut words: Vec<(ExactScalar, Vec<usize>)> = vec![(ExactScalar::one(), vec![m - 1])];
        for k in (0..m - 1).rev() {
            let p = &params[m - 2 - k];
            let mut next = Vec::with_capacity(words.len() * 2);
            for (c, w) in &words {
                let mut left = vec![k];
                left.extend_from_slice(w);
                next.push((c.clone(), left));
                let mut right = w.clone();
                right.push(k);
                next.push((-(c * p), right));
            }
            words = next;
        }
        let mut memo: HashMap<Vec<usize>, FockVector> = HashMap::new();
        let mut out = FockVector::zero();
        for (c, w) in &words {
            if c.is_zero() {
                continue;
            }
            let r = self.apply_word_memo(ops, w, v, &mut memo)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    fn apply_word_memo(
        &self,
        ops: &[ModeOp],
        word: &[usize],
        v: &FockVector,
        memo: &mut HashMap<Vec<usize>, FockVector>,
    ) -> Result<FockVector> {
        if word.is_empty() {
            return Ok(v.clone());
        }
        if let Some(r) = memo.get(word) {
            return Ok(r.clone());
        }
        let inner = self.apply_word_memo(ops, &word[1..], v, memo)?;
        let r = self.apply_mode(&ops[word[0]], &inner)?;
        memo.insert(word.to_vec(), r.clone());
        Ok(r)
    }

    pub fn apply_mode(&self, op: &ModeOp, v: &FockVector) -> Result<FockVector> {
        match op.kind {
            ModeKind::XPlus => self.apply_x_mode(Sign::Plus, op.index, op.mode, v),
            ModeKind::XMinus => self.apply_x_mode(Sign::Minus, op.index, op.mode, v),
            ModeKind::Psi => self.apply_psi_mode(op.index, op.mode, v),
            ModeKind::Phi => self.apply_phi_mode(op.index, op.mode, v),
            ModeKind::K => self.apply_k(op.index, 1, v),
            ModeKind::Kinv => self.apply_k(op.index, -1, v),
            ModeKind::A => self.apply_a(op.index, op.mode, v),
        }
    }

    pub fn apply_operator(&self, op: &Operator, v: &FockVector) -> Result<FockVector> {
        match op {
            Operator::Mode(m) => self.apply_mode(m, v),
            Operator::E0 => self.apply_e0(v, &BracketSpec::default_for(self.rank())),
        }
    }

    /// Applies an operator product written left to right: the rightmost
    /// factor acts first.
    pub fn apply_product(&self, ops: &[Operator], v: &FockVector) -> Result<FockVector> {
        let mut cur = v.clone();
        for op in ops.iter().rev() {
            cur = self.apply_operator(op, &cur)?;
        }
        Ok(cur)
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for j in 0..k as i64 {
        r = r * (n as i64 - j) / (j + 1);
    }
    r
}

/// Coefficient of `z^total` in `exp(sum_colors sum_k d_c(k) h_c(-k) z^k)`:
/// a sum over coloured partitions of `total` of
/// `prod d_c(k)^m / m!` times the monomial.
fn exp_coefficient(total: i64, colors: &[(Family, Vec<ExactScalar>)]) -> Vec<CreTerm> {
    // slots (level, color) from the largest level down
    let mut slots: Vec<(i64, usize)> = Vec::new();
    for k in (1..=total).rev() {
        for c in 0..colors.len() {
            slots.push((k, c));
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<(Family, i64, u32)> = Vec::new();
    rec(&slots, 0, total, colors, &mut chosen, ExactScalar::one(), &mut out);
    out
}

fn rec(
    slots: &[(i64, usize)],
    pos: usize,
    remaining: i64,
    colors: &[(Family, Vec<ExactScalar>)],
    chosen: &mut Vec<(Family, i64, u32)>,
    coef: ExactScalar,
    out: &mut Vec<CreTerm>,
) {
    if remaining == 0 {
        out.push((chosen.clone(), coef));
        return;
    }
    if pos == slots.len() {
        return;
    }
    let (k, c) = slots[pos];
    if k > remaining {
        rec(slots, pos + 1, remaining, colors, chosen, coef, out);
        return;
    }
    let (fam, ref d) = colors[c];
    let dk = &d[k as usize];
    // multiplicity 0
    rec(slots, pos + 1, remaining, colors, chosen, coef.clone(), out);
    if dk.is_zero() {
        return;
    }
    let mut term = coef;
    let mut mult: u32 = 0;
    while (mult as i64 + 1) * k <= remaining {
        mult += 1;
        term = &(&term * dk) * &ExactScalar::from_ratio(1, mult as i64);
        chosen.push((fam, k, mult));
        rec(slots, pos + 1, remaining - mult as i64 * k, colors, chosen, term.clone(), out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests;
