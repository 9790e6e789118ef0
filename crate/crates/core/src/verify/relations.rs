//! Mode-form sweeps of the Drinfeld relations over finite windows of modes
//! and a finite set of test vectors, plus the Lemma and highest-weight checks.
//!
//! Mode forms, all with `gamma = q`:
//!
//! * R2: `[a_i(k), a_j(l)] = delta_(k+l,0) [(a_i|a_j) k][k] / k`
//! * R4: every monomial of `x_(i,k) v` has degree `deg v + k`
//! * R5: `K_i x^(+-)_(j,k) K_i^-1 = q^(+-(a_i|a_j)) x^(+-)_(j,k)`
//! * R6: `[a_i(k), x^(+-)_(j,l)] = +-[(a_i|a_j) k] / k q^(-+|k|/2) x^(+-)_(j,k+l)`,
//!   and `+-(a_i|a_j) x^(+-)_(j,l)` for `k = 0`
//! * R7: `x_(i,m+1) x_(j,l) - c x_(i,m) x_(j,l+1) + x_(j,l+1) x_(i,m) - c x_(j,l) x_(i,m+1) = 0`
//!   with `c = q^(+-(a_i|a_j))`, read off from the coefficient of `z^-m w^-l`
//! * R8: `[x^+_(i,m), x^-_(j,l)] = delta_ij (q^((m-l)/2) psi_(i,m+l) - q^((l-m)/2) phi_(i,m+l)) / (q_i - q_i^-1)`,
//!   from `delta(w q / z)` and `delta(z q / w)` expanded at `z^-m w^-l`
//! * Serre: `sum_sigma sum_r (-1)^r [m r]_i x_(i,k_s1)..x_(i,k_sr) x_(j,l) x_(i,k_s(r+1))..x_(i,k_sm) = 0`
//!   with `m = 1 - A_ij`

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::report::{CheckRecord, VerificationReport};
use crate::error::{Error, Result};
use crate::fock::{monomial_grade, translate, weight, FockMonomial, FockVector, HeisenGen};
use crate::lattice::{cartan, constraint_check, d, eps_char, root_inner, WeightA, WeightC};
use crate::qscalar::{q_binom, q_int, q_int_frac, ExactScalar, HalfExponent};
use crate::vertex::{BracketSpec, ModeKind, ModeOp, Realization, Sign};

const MAX_WINDOW: i64 = 8;
const MAX_LEVEL: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    R2,
    R4,
    R5,
    R6,
    R7,
    R8,
    Serre,
    All,
}

impl Relation {
    fn includes(self, r: Relation) -> bool {
        self == Relation::All || self == r
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::R2 => "r2",
            Relation::R4 => "r4",
            Relation::R5 => "r5",
            Relation::R6 => "r6",
            Relation::R7 => "r7",
            Relation::R8 => "r8",
            Relation::Serre => "serre",
            Relation::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "r2" => Relation::R2,
            "r4" => Relation::R4,
            "r5" => Relation::R5,
            "r6" => Relation::R6,
            "r7" => Relation::R7,
            "r8" => Relation::R8,
            "serre" => Relation::Serre,
            "all" => Relation::All,
            _ => return Err(Error::Invalid(format!("unknown relation '{s}'"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub rank: usize,
    pub mode_min: i64,
    pub mode_max: i64,
    /// Window for the Serre sweeps; the mode window when `None`.
    pub serre_window: Option<(i64, i64)>,
    /// Deepest creation level used by the default test vectors.
    pub max_level: usize,
    pub relation: Relation,
    /// Replaces the default test vectors when set.
    pub vectors: Option<Vec<FockVector>>,
}

impl CheckConfig {
    /// Window `[-1, 1]`, depth 2, all relations, default vectors.
    pub fn new(rank: usize) -> Self {
        CheckConfig {
            rank,
            mode_min: -1,
            mode_max: 1,
            serre_window: None,
            max_level: 2,
            relation: Relation::All,
            vectors: None,
        }
    }

    pub fn with_window(mut self, mode_min: i64, mode_max: i64) -> Self {
        self.mode_min = mode_min;
        self.mode_max = mode_max;
        self
    }

    pub fn with_serre_window(mut self, lo: i64, hi: i64) -> Self {
        self.serre_window = Some((lo, hi));
        self
    }

    pub fn with_relation(mut self, r: Relation) -> Self {
        self.relation = r;
        self
    }

    pub fn with_vectors(mut self, v: Vec<FockVector>) -> Self {
        self.vectors = Some(v);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank < 2 {
            return Err(Error::RankTooSmall(self.rank));
        }
        let (slo, shi) = self.serre_range();
        for (lo, hi) in [(self.mode_min, self.mode_max), (slo, shi)] {
            if lo > hi {
                return Err(Error::Invalid(format!("empty mode window [{lo}, {hi}]")));
            }
            if lo.abs() > MAX_WINDOW || hi.abs() > MAX_WINDOW {
                return Err(Error::Invalid(format!("mode window must lie in [-{MAX_WINDOW}, {MAX_WINDOW}]")));
            }
        }
        if self.max_level > MAX_LEVEL {
            return Err(Error::Invalid(format!("max level must be at most {MAX_LEVEL}")));
        }
        if let Some(vs) = &self.vectors {
            for v in vs {
                if let Some(r) = v.rank() {
                    if r != self.rank {
                        return Err(Error::RankMismatch(self.rank, r));
                    }
                }
            }
        }
        Ok(())
    }

    fn modes(&self) -> Vec<i64> {
        (self.mode_min..=self.mode_max).collect()
    }

    fn serre_range(&self) -> (i64, i64) {
        self.serre_window.unwrap_or((self.mode_min, self.mode_max))
    }

    pub fn test_vectors(&self) -> Result<Vec<FockVector>> {
        match &self.vectors {
            Some(v) => Ok(v.clone()),
            None => default_test_vectors(self.rank, self.max_level),
        }
    }
}

/// `e^(lambda_i) e^(lambda~_i)`, the vacuum for `i = 0`.
pub fn fundamental_vector(n: usize, i: usize) -> Result<FockVector> {
    let m = FockMonomial::lattice(WeightC::fundamental(n, i)?, WeightA::fundamental(n, i)?)?;
    Ok(FockVector::from_monomial(m))
}

/// The vacuum and `e^(lambda_i) e^(lambda~_i)`; each of them, each hit by one
/// of `a_j(-l)` (`l <= max_level`) and `b_j(-1)`, and each translated by
/// `+-(alpha_j, alpha~_j)`.
pub fn default_test_vectors(n: usize, max_level: usize) -> Result<Vec<FockVector>> {
    let r = Realization::new(n)?;
    let f = r.fock();
    let mut out = Vec::new();
    for i in 0..=n {
        let base = fundamental_vector(n, i)?;
        out.push(base.clone());
        for l in 1..=max_level as i64 {
            for j in 1..=n {
                out.push(f.apply_heisenberg(HeisenGen::a(j, -l), &base)?);
            }
        }
        if max_level > 0 {
            for j in 1..n {
                out.push(f.apply_heisenberg(HeisenGen::b(j, -1), &base)?);
            }
        }
        for j in 1..=n {
            let (al, at) = (WeightC::simple_root(n, j)?, WeightA::simple_root(n, j)?);
            for s in [1, -1] {
                out.push(translate(&al.scale(s), &at.scale(s), &base)?);
            }
        }
    }
    Ok(out)
}

/// One factor of an operator word: a mode, or one branch of `x^(+-)_(i,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Letter {
    op: ModeOp,
    branch: Option<Sign>,
}

fn x(sign: Sign, i: usize, k: i64) -> Letter {
    let op = match sign {
        Sign::Plus => ModeOp::x_plus(i, k),
        Sign::Minus => ModeOp::x_minus(i, k),
    };
    Letter { op, branch: None }
}

fn xb(sign: Sign, i: usize, k: i64, branch: Sign) -> Letter {
    Letter { branch: Some(branch), ..x(sign, i, k) }
}

fn md(op: ModeOp) -> Letter {
    Letter { op, branch: None }
}

/// Operator words applied to one vector, memoized on suffixes. Words are
/// written left to right; the rightmost letter acts first.
struct WordCache<'a> {
    real: &'a Realization,
    v: &'a FockVector,
    memo: HashMap<Vec<Letter>, FockVector>,
}

impl<'a> WordCache<'a> {
    fn new(real: &'a Realization, v: &'a FockVector) -> Self {
        WordCache { real, v, memo: HashMap::new() }
    }

    fn apply(&mut self, word: &[Letter]) -> Result<FockVector> {
        if word.is_empty() {
            return Ok(self.v.clone());
        }
        if let Some(r) = self.memo.get(word) {
            return Ok(r.clone());
        }
        let inner = self.apply(&word[1..])?;
        let l = word[0];
        let r = match l.branch {
            None => self.real.apply_mode(&l.op, &inner)?,
            Some(b) => {
                let s = if l.op.kind == ModeKind::XPlus { Sign::Plus } else { Sign::Minus };
                self.real.apply_x_mode_split(s, l.op.index, l.op.mode, b, &inner)?
            }
        };
        self.memo.insert(word.to_vec(), r.clone());
        Ok(r)
    }

    fn combo(&mut self, terms: &[(ExactScalar, Vec<Letter>)]) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (c, w) in terms {
            if !c.is_zero() {
                out.add_scaled(&self.apply(w)?, c);
            }
        }
        Ok(out)
    }
}

fn one() -> ExactScalar {
    ExactScalar::one()
}

fn q_to(e: HalfExponent) -> ExactScalar {
    ExactScalar::q_pow(e)
}

fn note(out: &mut Vec<String>, tag: impl fmt::Display, r: &FockVector) {
    out.extend(r.term_strings().into_iter().map(|t| format!("{tag}: {t}")));
}

fn sign_json(s: Sign) -> Value {
    Value::String(s.symbol().into())
}

/// Distinct permutations of a sorted tuple, in lexicographic order.
fn permutations(sorted: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let Some(p) = (1..cur.len()).rev().find(|&p| cur[p - 1] < cur[p]) else {
            return out;
        };
        let s = (p..cur.len()).rev().find(|&s| cur[s] > cur[p - 1]).expect("pivot has a successor");
        cur.swap(p - 1, s);
        cur[p..].reverse();
        out.push(cur.clone());
    }
}

/// Nondecreasing `m`-tuples over `[lo, hi]`.
fn sorted_tuples(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in sorted_tuples(m - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type CheckFn<'a, P> = dyn Fn(&mut WordCache, &P) -> Result<Vec<String>> + Sync + 'a;

/// A realization together with the resolved configuration and test vectors.
pub struct Verifier {
    cfg: CheckConfig,
    real: Realization,
    vectors: Vec<FockVector>,
}

impl Verifier {
    pub fn new(cfg: &CheckConfig) -> Result<Self> {
        cfg.validate()?;
        let vectors = cfg.test_vectors()?;
        Ok(Verifier {
            cfg: cfg.clone(),
            real: Realization::new(cfg.rank)?,
            vectors,
        })
    }

    pub fn realization(&self) -> &Realization {
        &self.real
    }

    pub fn vectors(&self) -> &[FockVector] {
        &self.vectors
    }

    fn n(&self) -> usize {
        self.cfg.rank
    }

    fn ip(&self, i: usize, j: usize) -> HalfExponent {
        root_inner(self.n(), i, j).expect("indices in range")
    }

    fn new_report(&self) -> VerificationReport {
        VerificationReport::new("relations", Some(self.n()))
    }

    /// Runs `check` for every parameter set on every test vector. Vectors
    /// are processed in parallel; records come out grouped by parameter set,
    /// then in test-vector order.
    fn sweep<P: Sync>(&self, name: &str, params: &[(Value, P)], check: &CheckFn<'_, P>) -> Vec<CheckRecord> {
        let window = json!([self.cfg.mode_min, self.cfg.mode_max]);
        let per_vector: Vec<Vec<CheckRecord>> = self
            .vectors
            .par_iter()
            .map(|v| {
                let mut cache = WordCache::new(&self.real, v);
                let label = v.to_string();
                params
                    .iter()
                    .map(|(pv, p)| {
                        let start = Instant::now();
                        let residual = check(&mut cache, p).unwrap_or_else(|e| vec![format!("error: {e}")]);
                        let mut m = match pv {
                            Value::Object(m) => m.clone(),
                            _ => Map::new(),
                        };
                        m.entry("window").or_insert(window.clone());
                        m.insert("vector".into(), Value::String(label.clone()));
                        CheckRecord::new(name, Value::Object(m), residual, start.elapsed().as_millis() as u64)
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::with_capacity(per_vector.len() * params.len());
        for k in 0..params.len() {
            for recs in &per_vector {
                out.push(recs[k].clone());
            }
        }
        out
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
    }

    pub fn r2(&self) -> VerificationReport {
        let modes = self.cfg.modes();
        let params: Vec<(Value, (usize, usize))> =
            self.pairs().into_iter().map(|(i, j)| (json!({"i": i, "j": j}), (i, j))).collect();
        let check = |c: &mut WordCache, &(i, j): &(usize, usize)| {
            let mut res = Vec::new();
            for &k in &modes {
                for &l in &modes {
                    let coef = if k + l == 0 && k != 0 {
                        &(&q_int_frac(self.ip(i, j), k) * &q_int(k, HalfExponent::ONE)?) * &ExactScalar::from_ratio(1, k)
                    } else {
                        ExactScalar::zero()
                    };
                    let r = c.combo(&[
                        (one(), vec![md(ModeOp::a(i, k)), md(ModeOp::a(j, l))]),
                        (-one(), vec![md(ModeOp::a(j, l)), md(ModeOp::a(i, k))]),
                        (-coef, vec![]),
                    ])?;
                    note(&mut res, format_args!("k={k} l={l}"), &r);
                }
            }
            Ok(res)
        };
        let mut rep = self.new_report();
        rep.extend(self.sweep("r2", &params, &check));
        rep
    }

    pub fn r4(&self) -> VerificationReport {
        let n = self.n();
        let modes = self.cfg.modes();
        let params: Vec<(Value, (usize, Sign))> = (1..=n)
            .flat_map(|i| Sign::both().map(|s| (json!({"i": i, "sign": sign_json(s)}), (i, s))))
            .collect();
        let check = |c: &mut WordCache, &(i, s): &(usize, Sign)| {
            let mut res = Vec::new();
            for (mono, coef) in c.v.terms() {
                let single = FockVector::from_term(mono.clone(), coef.clone());
                let g = monomial_grade(mono);
                for &k in &modes {
                    let out = c.real.apply_x_mode(s, i, k, &single)?;
                    for (m2, c2) in out.terms() {
                        if monomial_grade(m2) != g + k {
                            let bad = FockVector::from_term(m2.clone(), c2.clone());
                            note(&mut res, format_args!("k={k} degree {}", monomial_grade(m2)), &bad);
                        }
                    }
                }
            }
            Ok(res)
        };
        let mut rep = self.new_report();
        rep.extend(self.sweep("r4", &params, &check));
        rep
    }

    pub fn r5(&self) -> VerificationReport {
        let modes = self.cfg.modes();
        let params: Vec<(Value, (usize, usize, Sign))> = self
            .pairs()
            .into_iter()
            .flat_map(|(i, j)| Sign::both().map(|s| (json!({"i": i, "j": j, "sign": sign_json(s)}), (i, j, s))))
            .collect();
        let check = |c: &mut WordCache, &(i, j, s): &(usize, usize, Sign)| {
            let mut res = Vec::new();
            let factor = q_to(self.ip(i, j) * s.value());
            for &k in &modes {
                let r = c.combo(&[
                    (one(), vec![md(ModeOp::k(i)), x(s, j, k), md(ModeOp::k_inv(i))]),
                    (-factor.clone(), vec![x(s, j, k)]),
                ])?;
                note(&mut res, format_args!("k={k}"), &r);
            }
            Ok(res)
        };
        let mut rep = self.new_report();
        rep.extend(self.sweep("r5", &params, &check));
        rep
    }

    pub fn r6(&self) -> VerificationReport {
        let modes = self.cfg.modes();
        let params: Vec<(Value, (usize, usize, Sign))> = self
            .pairs()
            .into_iter()
            .flat_map(|(i, j)| Sign::both().map(|s| (json!({"i": i, "j": j, "sign": sign_json(s)}), (i, j, s))))
            .collect();
        let check = |c: &mut WordCache, &(i, j, s): &(usize, usize, Sign)| {
            let mut res = Vec::new();
            let ip = self.ip(i, j);
            let sv = ExactScalar::from_int(s.value());
            for &k in &modes {
                let coef = if k == 0 {
                    &sv * &ExactScalar::from_ratio(ip.doubled(), 2)
                } else {
                    let shift = q_to(HalfExponent::from_doubled(-s.value() * k.abs()));
                    &(&(&sv * &q_int_frac(ip, k)) * &ExactScalar::from_ratio(1, k)) * &shift
                };
                for &l in &modes {
                    let r = c.combo(&[
                        (one(), vec![md(ModeOp::a(i, k)), x(s, j, l)]),
                        (-one(), vec![x(s, j, l), md(ModeOp::a(i, k))]),
                        (-coef.clone(), vec![x(s, j, k + l)]),
                    ])?;
                    note(&mut res, format_args!("k={k} l={l}"), &r);
                }
            }
            Ok(res)
        };
        let mut rep = self.new_report();
        rep.extend(self.sweep("r6", &params, &check));
        rep
    }

    fn r7_records(&self, combos: &[(usize, usize, Sign)]) -> Vec<CheckRecord> {
        let modes = self.cfg.modes();
        let params: Vec<(Value, (usize, usize, Sign))> = combos
            .iter()
            .map(|&(i, j, s)| (json!({"i": i, "j": j, "sign": sign_json(s)}), (i, j, s)))
            .collect();
        let check = |c: &mut WordCache, &(i, j, s): &(usize, usize, Sign)| {
            let mut res = Vec::new();
            let a = q_to(self.ip(i, j) * s.value());
            for &m in &modes {
                for &l in &modes {
                    let r = c.combo(&[
                        (one(), vec![x(s, i, m + 1), x(s, j, l)]),
                        (-a.clone(), vec![x(s, i, m), x(s, j, l + 1)]),
                        (one(), vec![x(s, j, l + 1), x(s, i, m)]),
                        (-a.clone(), vec![x(s, j, l), x(s, i, m + 1)]),
                    ])?;
                    note(&mut res, format_args!("m={m} l={l}"), &r);
                }
            }
            Ok(res)
        };
        self.sweep("r7", &params, &check)
    }

    pub fn r7(&self, i: usize, j: usize, sign: Sign) -> Result<VerificationReport> {
        self.check_pair(i, j)?;
        let mut rep = self.new_report();
        rep.extend(self.r7_records(&[(i, j, sign)]));
        Ok(rep)
    }

    fn r8_records(&self, pairs: &[(usize, usize)]) -> Vec<CheckRecord> {
        let n = self.n();
        let modes = self.cfg.modes();
        let params: Vec<(Value, (usize, usize))> =
            pairs.iter().map(|&(i, j)| (json!({"i": i, "j": j}), (i, j))).collect();
        let check = |c: &mut WordCache, &(i, j): &(usize, usize)| {
            let mut res = Vec::new();
            let qi = q_to(d(n, i)?);
            let f = (&qi - &qi.inv()?).inv()?;
            for &m in &modes {
                for &l in &modes {
                    let mut terms = vec![
                        (one(), vec![x(Sign::Plus, i, m), x(Sign::Minus, j, l)]),
                        (-one(), vec![x(Sign::Minus, j, l), x(Sign::Plus, i, m)]),
                    ];
                    if i == j {
                        let up = &f * &q_to(HalfExponent::from_doubled(m - l));
                        let down = &f * &q_to(HalfExponent::from_doubled(l - m));
                        terms.push((-up, vec![md(ModeOp::psi(i, m + l))]));
                        terms.push((down, vec![md(ModeOp::phi(i, m + l))]));
                    }
                    let r = c.combo(&terms)?;
                    note(&mut res, format_args!("m={m} l={l}"), &r);
                }
            }
            Ok(res)
        };
        self.sweep("r8", &params, &check)
    }

    pub fn r8(&self, i: usize, j: usize) -> Result<VerificationReport> {
        self.check_pair(i, j)?;
        let mut rep = self.new_report();
        rep.extend(self.r8_records(&[(i, j)]));
        Ok(rep)
    }

    fn serre_records(&self, combos: &[(usize, usize, Sign)]) -> Result<Vec<CheckRecord>> {
        let n = self.n();
        let (lo, hi) = self.cfg.serre_range();
        let window = json!([lo, hi]);
        let mut params = Vec::new();
        for &(i, j, s) in combos {
            let m = (1 - cartan(n, i, j)?) as usize;
            let coefs: Vec<ExactScalar> = (0..=m as i64)
                .map(|r| {
                    let b = q_binom(m as i64, r, d(n, i)?)?;
                    Ok(if r % 2 == 0 { b } else { -b })
                })
                .collect::<Result<_>>()?;
            let pv = json!({"i": i, "j": j, "sign": sign_json(s), "order": m, "window": window});
            params.push((pv, (i, j, s, m, coefs)));
        }
        let check = |c: &mut WordCache, (i, j, s, m, coefs): &(usize, usize, Sign, usize, Vec<ExactScalar>)| {
            let mut res = Vec::new();
            for tuple in sorted_tuples(*m, lo, hi) {
                let perms = permutations(&tuple);
                for l in lo..=hi {
                    let mut terms = Vec::new();
                    for p in &perms {
                        for (r, coef) in coefs.iter().enumerate() {
                            let mut w: Vec<Letter> = p[..r].iter().map(|&k| x(*s, *i, k)).collect();
                            w.push(x(*s, *j, l));
                            w.extend(p[r..].iter().map(|&k| x(*s, *i, k)));
                            terms.push((coef.clone(), w));
                        }
                    }
                    let r = c.combo(&terms)?;
                    note(&mut res, format_args!("k={tuple:?} l={l}"), &r);
                }
            }
            Ok(res)
        };
        Ok(self.sweep("serre", &params, &check))
    }

    /// Serre relations for `(i, j)`, both signs.
    pub fn serre(&self, i: usize, j: usize) -> Result<VerificationReport> {
        self.check_pair(i, j)?;
        if i == j {
            return Err(Error::Invalid("the Serre relations need i != j".into()));
        }
        let mut rep = self.new_report();
        rep.extend(self.serre_records(&[(i, j, Sign::Plus), (i, j, Sign::Minus)])?);
        Ok(rep)
    }

    /// Branch-wise Serre for adjacent short roots `i`, `j < n`: with
    /// `T(a, k; b, k') = X_(i,a)(k) X_(i,b)(k') X_(j,e) - [2]_i X_(i,a)(k) X_(j,e) X_(i,b)(k') + X_(j,e) X_(i,a)(k) X_(i,b)(k')`
    /// at a fixed branch `e` of `X_j`, both `T(+,k;-,k') + T(-,k';+,k)` and
    /// `T(e',k;e',k') + T(e',k';e',k)` vanish.
    pub fn sub_serre(&self, i: usize, j: usize) -> Result<VerificationReport> {
        self.check_pair(i, j)?;
        let mut rep = self.new_report();
        rep.extend(self.sub_serre_records(&[(i, j)])?);
        Ok(rep)
    }

    fn sub_serre_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        self.pairs()
            .into_iter()
            .filter(|&(i, j)| i < n && j < n && i.abs_diff(j) == 1)
            .collect()
    }

    fn sub_serre_records(&self, pairs: &[(usize, usize)]) -> Result<Vec<CheckRecord>> {
        let n = self.n();
        for &(i, j) in pairs {
            if i >= n || j >= n || i.abs_diff(j) != 1 {
                return Err(Error::Invalid(format!("({i}, {j}) is not a pair of adjacent short roots")));
            }
        }
        let (lo, hi) = self.cfg.serre_range();
        let two = q_int(2, HalfExponent::HALF)?;
        let mut out = Vec::new();
        for (name, mixed) in [("serre.sub_mixed", true), ("serre.sub_equal", false)] {
            let mut params = Vec::new();
            for &(i, j) in pairs {
                for s in Sign::both() {
                    for e in Sign::both() {
                        let pv = json!({"i": i, "j": j, "sign": sign_json(s), "j_branch": sign_json(e), "window": [lo, hi]});
                        params.push((pv, (i, j, s, e)));
                    }
                }
            }
            let two = two.clone();
            let check = move |c: &mut WordCache, &(i, j, s, e): &(usize, usize, Sign, Sign)| {
                let t = |a: Sign, ka: i64, b: Sign, kb: i64, l: i64| {
                    let (xa, xbb, xj) = (xb(s, i, ka, a), xb(s, i, kb, b), xb(s, j, l, e));
                    vec![
                        (one(), vec![xa, xbb, xj]),
                        (-two.clone(), vec![xa, xj, xbb]),
                        (one(), vec![xj, xa, xbb]),
                    ]
                };
                let mut res = Vec::new();
                for k1 in lo..=hi {
                    for k2 in lo..=hi {
                        for l in lo..=hi {
                            if mixed {
                                let mut w = t(Sign::Plus, k1, Sign::Minus, k2, l);
                                w.extend(t(Sign::Minus, k2, Sign::Plus, k1, l));
                                note(&mut res, format_args!("k=({k1},{k2}) l={l}"), &c.combo(&w)?);
                                continue;
                            }
                            for b in Sign::both() {
                                let mut w = t(b, k1, b, k2, l);
                                w.extend(t(b, k2, b, k1, l));
                                let tag = format_args!("branch {} k=({k1},{k2}) l={l}", b.symbol());
                                note(&mut res, tag, &c.combo(&w)?);
                            }
                        }
                    }
                }
                Ok(res)
            };
            out.extend(self.sweep(name, &params, &check));
        }
        Ok(out)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange { index: k, max: n });
            }
        }
        Ok(())
    }

    /// The sweeps selected by the configuration: R7 for all ordered pairs and
    /// both signs, R8 for all pairs, Serre for all `i != j` and both signs
    /// (with the branch-wise claims where adjacent short pairs exist).
    pub fn relations(&self) -> Result<VerificationReport> {
        let n = self.n();
        let sel = self.cfg.relation;
        let mut rep = self.new_report();
        if sel.includes(Relation::R2) {
            rep.merge(self.r2());
        }
        if sel.includes(Relation::R4) {
            rep.merge(self.r4());
        }
        if sel.includes(Relation::R5) {
            rep.merge(self.r5());
        }
        if sel.includes(Relation::R6) {
            rep.merge(self.r6());
        }
        if sel.includes(Relation::R7) {
            let combos: Vec<_> = self
                .pairs()
                .into_iter()
                .flat_map(|(i, j)| Sign::both().map(move |s| (i, j, s)))
                .collect();
            rep.extend(self.r7_records(&combos));
        }
        if sel.includes(Relation::R8) {
            rep.extend(self.r8_records(&self.pairs()));
        }
        if sel.includes(Relation::Serre) {
            let combos: Vec<_> = self
                .pairs()
                .into_iter()
                .filter(|&(i, j)| i != j)
                .flat_map(|(i, j)| Sign::both().map(move |s| (i, j, s)))
                .collect();
            rep.extend(self.serre_records(&combos)?);
            let sub = self.sub_serre_pairs();
            if !sub.is_empty() && n >= 3 {
                rep.extend(self.sub_serre_records(&sub)?);
            }
        }
        rep.sort();
        Ok(rep)
    }

    /// Lemma (i): `x^+_(j,m)` kills `e^lambda e^lambda~` for `m >= 0` and
    /// dominant `lambda = sum m_k e_k` (`2 >= m_1 >= ... >= m_n >= 0`) with
    /// `(lambda~, alpha~_k) = m_k - m_(k+1)`. Lemma (ii): the action of
    /// `x^-_(j,0)` and `x^-_(j,1)` on `e^(lambda_i) e^(lambda~_i)`.
    pub fn lemma(&self) -> Result<VerificationReport> {
        let n = self.n();
        let mut rep = VerificationReport::new("lemma", Some(n));
        let top = self.cfg.mode_max.max(0);
        for lam in dominant_weights(n, 2) {
            let t: Vec<i64> = (0..n - 1).map(|k| lam[k] - lam[k + 1]).collect();
            let (lc, lt) = (WeightC::new(lam.clone()), WeightA::new(t));
            if !constraint_check(&lc, &lt) {
                continue;
            }
            let v = FockVector::from_monomial(FockMonomial::lattice(lc, lt)?);
            let label = v.to_string();
            rep.push(CheckRecord::timed("lemma.raising", json!({"vector": label, "mode_max": top}), || {
                let mut res = Vec::new();
                for j in 1..=n {
                    for m in 0..=top {
                        match self.real.apply_x_mode(Sign::Plus, j, m, &v) {
                            Ok(r) => note(&mut res, format_args!("j={j} m={m}"), &r),
                            Err(e) => res.push(format!("error: {e}")),
                        }
                    }
                }
                res
            }));
        }
        for i in 1..=n {
            let v = fundamental_vector(n, i)?;
            let lam = WeightC::fundamental(n, i)?;
            let target = FockMonomial::lattice(
                lam.sub(&WeightC::simple_root(n, i)?),
                WeightA::fundamental(n, i)?.sub(&WeightA::simple_root(n, i)?),
            )?;
            let expected = FockVector::from_term(target, ExactScalar::from_int(-eps_char(i, &lam)?));
            rep.push(CheckRecord::timed("lemma.lowering", json!({"i": i}), || {
                let mut res = Vec::new();
                for j in 1..=n {
                    let run = || -> Result<(FockVector, FockVector)> {
                        let mut x0 = self.real.apply_x_mode(Sign::Minus, j, 0, &v)?;
                        if i == j {
                            x0 = x0.sub(&expected);
                        }
                        Ok((x0, self.real.apply_x_mode(Sign::Minus, j, 1, &v)?))
                    };
                    match run() {
                        Ok((x0, x1)) => {
                            note(&mut res, format_args!("j={j} x-(0)"), &x0);
                            note(&mut res, format_args!("j={j} x-(1)"), &x1);
                        }
                        Err(e) => res.push(format!("error: {e}")),
                    }
                }
                res
            }));
        }
        Ok(rep)
    }

    /// For `i = 0..n`: `e_1..e_n` and `e_0` kill `e^(lambda_i) e^(lambda~_i)`,
    /// and `K_j` acts by `q_j^(delta_ij)`.
    pub fn hwv(&self) -> Result<VerificationReport> {
        let n = self.n();
        let mut rep = VerificationReport::new("hwv", Some(n));
        let spec = BracketSpec::default_for(n);
        for i in 0..=n {
            let v = fundamental_vector(n, i)?;
            rep.push(CheckRecord::timed("hwv", json!({"i": i, "vector": v.to_string()}), || {
                let run = || -> Result<Vec<String>> {
                    let mut res = Vec::new();
                    for j in 1..=n {
                        note(&mut res, format_args!("e_{j}"), &self.real.chevalley_e(j, &v)?);
                    }
                    note(&mut res, "e_0", &self.real.apply_e0(&v, &spec)?);
                    let (w, level) = weight(&v)?;
                    for j in 1..=n {
                        let dj = d(n, j)?;
                        let e = if i == j { dj } else { HalfExponent::ZERO };
                        let k = self.real.apply_k(j, 1, &v)?.sub(&v.scale(&q_to(e)));
                        note(&mut res, format_args!("K_{j}"), &k);
                        if w[j - 1] != e {
                            res.push(format!("weight: (alpha_{j}|lambda) = {}, expected {e}", w[j - 1]));
                        }
                    }
                    if level != 1 {
                        res.push(format!("level {level}"));
                    }
                    Ok(res)
                };
                run().unwrap_or_else(|e| vec![format!("error: {e}")])
            }));
        }
        Ok(rep)
    }
}

/// `m_1 >= ... >= m_n >= 0` with `m_1 <= top`.
fn dominant_weights(n: usize, top: i64) -> Vec<Vec<i64>> {
    sorted_tuples(n, 0, top)
        .into_iter()
        .map(|mut t| {
            t.reverse();
            t
        })
        .collect()
}

pub fn verify_relations(cfg: &CheckConfig) -> Result<VerificationReport> {
    Verifier::new(cfg)?.relations()
}

pub fn verify_r2(cfg: &CheckConfig) -> Result<VerificationReport> {
    Ok(Verifier::new(cfg)?.r2())
}

pub fn verify_r4(cfg: &CheckConfig) -> Result<VerificationReport> {
    Ok(Verifier::new(cfg)?.r4())
}

pub fn verify_r5(cfg: &CheckConfig) -> Result<VerificationReport> {
    Ok(Verifier::new(cfg)?.r5())
}

pub fn verify_r6(cfg: &CheckConfig) -> Result<VerificationReport> {
    Ok(Verifier::new(cfg)?.r6())
}

pub fn verify_r7(cfg: &CheckConfig, i: usize, j: usize, sign: Sign) -> Result<VerificationReport> {
    Verifier::new(cfg)?.r7(i, j, sign)
}

pub fn verify_r8(cfg: &CheckConfig, i: usize, j: usize) -> Result<VerificationReport> {
    Verifier::new(cfg)?.r8(i, j)
}

pub fn verify_serre(cfg: &CheckConfig, i: usize, j: usize) -> Result<VerificationReport> {
    Verifier::new(cfg)?.serre(i, j)
}

pub fn verify_sub_serre(cfg: &CheckConfig, i: usize, j: usize) -> Result<VerificationReport> {
    Verifier::new(cfg)?.sub_serre(i, j)
}

pub fn verify_lemma(cfg: &CheckConfig) -> Result<VerificationReport> {
    Verifier::new(cfg)?.lemma()
}

pub fn verify_hwv(cfg: &CheckConfig) -> Result<VerificationReport> {
    Verifier::new(cfg)?.hwv()
}

#[cfg(test)]
mod tests;
