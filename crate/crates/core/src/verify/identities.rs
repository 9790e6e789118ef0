//! The q-power, contraction and polynomial identities behind the relation
//! proofs.

use serde_json::json;

use super::poly::{MultiPoly, Var};
use super::report::{CheckRecord, VerificationReport};
use crate::error::Result;
use crate::fock::{heis_bracket, HeisenGen};
use crate::qscalar::{classical_limit, q_int, q_int_frac, ExactScalar, HalfExponent};
use crate::qseries::{qpow_exp, qpow_product, TruncatedSeries};

const QPOW_ORDER: i64 = 16;
const OPE_ORDER: i64 = 12;

fn h(d: i64) -> HalfExponent {
    HalfExponent::from_doubled(d)
}

fn q() -> ExactScalar {
    ExactScalar::q_pow(HalfExponent::ONE)
}

fn qh(d: i64) -> ExactScalar {
    ExactScalar::q_pow(h(d))
}

/// Terms of `a - b` below `order`.
fn series_residual(a: &TruncatedSeries, b: &TruncatedSeries, order: HalfExponent) -> Vec<String> {
    let diff = a.add(&b.neg()).truncate(order);
    diff.terms()
        .filter(|(e, _)| **e < order)
        .map(|(e, c)| format!("{c} z^{e}"))
        .collect()
}

fn lift(r: Result<Vec<String>>) -> Vec<String> {
    r.unwrap_or_else(|e| vec![format!("error: {e}")])
}

/// The two defining formulas of `(1-z)^a_{q^2}` agree, the inverse property
/// holds and `(1-z)^2_{q^2} = (1-qz)(1-q^-1 z)`.
pub fn check_qpow() -> VerificationReport {
    let mut rep = VerificationReport::new("identities", None);
    let order = HalfExponent::int(QPOW_ORDER);
    for d in [-4, -3, -2, -1, 1, 2, 3, 4] {
        let a = h(d);
        rep.push(CheckRecord::timed("qpow.exp_vs_product", json!({"a": a.to_string()}), || {
            lift((|| Ok(series_residual(&qpow_exp(a, order)?, &qpow_product(a, order)?, order)))())
        }));
        rep.push(CheckRecord::timed("qpow.inverse", json!({"a": a.to_string()}), || {
            lift((|| {
                let prod = qpow_product(a, order)?.mul(&qpow_product(-a, order)?);
                Ok(series_residual(&prod, &TruncatedSeries::one(order), order))
            })())
        }));
    }
    rep.push(CheckRecord::timed("qpow.square", json!({"a": "2"}), || {
        lift((|| {
            let lhs = qpow_exp(HalfExponent::int(2), order)?;
            let rhs = TruncatedSeries::one_minus(q(), order).mul(&TruncatedSeries::one_minus(q().inv()?, order));
            Ok(series_residual(&lhs, &rhs, order))
        })())
    }));
    rep
}

/// `exp(sign sum_k br(k) / [k]^2 x^k)` to `order`: the contraction of an
/// annihilation part `-/+ h(k) / [k]` against a creation part `h(-k) / [k]`,
/// with `br(k)` the Heisenberg bracket at level `k`.
fn contraction(sign: i64, br: impl Fn(i64) -> Result<ExactScalar>, order: HalfExponent) -> Result<TruncatedSeries> {
    let mut log = Vec::new();
    for k in 1..order.as_integer().expect("integral order") {
        let qk = q_int(k, HalfExponent::ONE)?;
        let c = br(k)?.checked_div(&(&qk * &qk))?;
        log.push((HalfExponent::int(k), &c * &ExactScalar::from_int(sign)));
    }
    TruncatedSeries::from_terms(log, order).exp()
}

/// Inner products `(x|y)` realized by simple roots at rank 3, with the pair
/// that realizes them; `1/2` has no such pair and uses the form directly.
const YY_CASES: [(i64, Option<(usize, usize)>); 5] =
    [(-2, Some((2, 3))), (-1, Some((1, 2))), (1, None), (2, Some((1, 1))), (4, Some((3, 3)))];

/// Scalar contraction functions of the vertex operator products.
pub fn check_ope_factors() -> VerificationReport {
    let mut rep = VerificationReport::new("identities", None);
    let order = HalfExponent::int(OPE_ORDER);
    for (d, pair) in YY_CASES {
        let ip = h(d);
        for e1 in [1i64, -1] {
            for e2 in [1i64, -1] {
                let params = json!({"inner": ip.to_string(), "eps": e1, "eps2": e2});
                rep.push(CheckRecord::timed("ope.yy", params, || {
                    lift((|| {
                        // Y^e1(z) Y^e2(w): annihilation -e1 q^(-e1 k/2)/[k], creation e2 q^(-e2 k/2)/[k]
                        let br = |k: i64| match pair {
                            Some((i, j)) => heis_bracket(3, HeisenGen::a(i, k), HeisenGen::a(j, -k)),
                            None => Ok(&(&q_int_frac(ip, k) * &q_int(k, HalfExponent::ONE)?) * &ExactScalar::from_ratio(1, k)),
                        };
                        let shift = h(-(e1 + e2));
                        let lhs = contraction(-e1 * e2, br, order)?.scale_var(shift);
                        let rhs = qpow_product(ip * (e1 * e2), order)?.scale_var(shift);
                        Ok(series_residual(&lhs, &rhs, order))
                    })())
                }));
            }
        }
    }
    for (i, j) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
        let params = json!({"i": i, "j": j});
        rep.push(CheckRecord::timed("ope.uu", params.clone(), || {
            lift((|| {
                let br = |k: i64| heis_bracket(4, HeisenGen::b(i, k), HeisenGen::b(j, -k));
                let lhs = contraction(-1, br, order)?;
                let ip = crate::lattice::gram_tilde(i, j);
                Ok(series_residual(&lhs, &qpow_product(ip, order)?, order))
            })())
        }));
        rep.push(CheckRecord::timed("ope.uu_star", params, || {
            lift((|| {
                let br = |k: i64| heis_bracket(4, HeisenGen::b(i, k), HeisenGen::b(j, -k));
                let uu = contraction(-1, br, order)?;
                let uus = contraction(1, br, order)?;
                Ok(series_residual(&uu.mul(&uus), &TruncatedSeries::one(order), order))
            })())
        }));
    }
    rep.push(CheckRecord::timed("ope.long_square", json!({"inner": "2"}), || {
        lift((|| {
            let lhs = qpow_product(HalfExponent::int(2), order)?.scale_var(-HalfExponent::ONE);
            let rhs = TruncatedSeries::one_minus(ExactScalar::one(), order)
                .mul(&TruncatedSeries::one_minus(qh(-4), order));
            Ok(series_residual(&lhs, &rhs, order))
        })())
    }));
    rep.push(CheckRecord::timed("ope.merge", json!({}), || {
        lift((|| {
            let half = -HalfExponent::HALF;
            let lhs = qpow_product(half, order)?.mul(&qpow_product(half, order)?.scale_var(-HalfExponent::ONE));
            let rhs = TruncatedSeries::one_minus(qh(-1), order).inv()?;
            Ok(series_residual(&lhs, &rhs, order))
        })())
    }));
    rep
}

fn z1() -> MultiPoly {
    MultiPoly::var(Var::Z1)
}

fn z2() -> MultiPoly {
    MultiPoly::var(Var::Z2)
}

fn z3() -> MultiPoly {
    MultiPoly::var(Var::Z3)
}

fn w() -> MultiPoly {
    MultiPoly::var(Var::W)
}

fn c(s: ExactScalar) -> MultiPoly {
    MultiPoly::constant(s)
}

/// `x - s y`.
fn lin(x: &MultiPoly, s: &ExactScalar, y: &MultiPoly) -> MultiPoly {
    x - &y.scale(s)
}

/// Left side minus right side of the two-variable identity, with `a`
/// symbolic.
pub fn identity1_residual() -> MultiPoly {
    let a = MultiPoly::var(Var::A);
    let ainv = MultiPoly::monomial(Var::A, -1);
    let aw = &a * &w();
    let az1 = &a * &z1();
    let az2 = &a * &z2();
    let t1 = &(&z1() - &aw) * &(&z2() - &aw);
    let t2 = &(&(&a + &ainv) * &(&z1() - &aw)) * &(&w() - &az2);
    let t3 = &(&w() - &az1) * &(&w() - &az2);
    let rhs = &(&(&ainv - &a) * &w()) * &(&z1() - &(&a.pow(2) * &z2()));
    &(&(&t1 + &t2) + &t3) - &rhs
}

pub fn check_identity1() -> VerificationReport {
    let mut rep = VerificationReport::new("identities", None);
    let res = identity1_residual();
    rep.push(CheckRecord::timed("identity1.symbolic", json!({"a": "symbolic"}), || res.term_strings()));
    rep.push(CheckRecord::timed("identity1.specialized", json!({"a": "1"}), || {
        res.eval_a(&ExactScalar::one()).term_strings()
    }));
    rep.push(CheckRecord::timed("identity1.specialized", json!({"a": "q"}), || res.eval_a(&q()).term_strings()));
    rep
}

const S3: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 2, 0], 1), ([2, 0, 1], 1)];

fn antisymmetrize(p: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for (perm, s) in S3 {
        acc = &acc + &p.permute_z(perm).scale(&ExactScalar::from_int(s));
    }
    acc
}

/// The four-term cubic factor of the fourth-order Serre computation.
pub fn identity2_bracket() -> MultiPoly {
    let three = q_int(3, HalfExponent::HALF).expect("nonzero base");
    let qq = q();
    let a = |z: &MultiPoly| lin(z, &qq, &w());
    let b = |z: &MultiPoly| lin(&w(), &qq, z);
    let t1 = &(&a(&z1()) * &a(&z2())) * &a(&z3());
    let t2 = &(&(&a(&z1()) * &a(&z2())) * &b(&z3())) * &three;
    let t3 = &(&(&a(&z1()) * &b(&z2())) * &b(&z3())) * &three;
    let t4 = &(&b(&z1()) * &b(&z2())) * &b(&z3());
    &(&(&t1 + &t2) + &t3) + &t4
}

/// `(q^-1 - q)(w^2 (z1 - m z2 + q^3 z3) + w (z1 z2 - m z1 z3 + q^3 z2 z3))`.
fn identity2_simplification(m: &ExactScalar) -> MultiPoly {
    let q3 = q().pow(3);
    let quad = &(&z1() - &z2().scale(m)) + &z3().scale(&q3);
    let lin2 = &(&(&z1() * &z2()) - &(&z1() * &z3()).scale(m)) + &(&z2() * &z3()).scale(&q3);
    let inner = &(&w().pow(2) * &quad) + &(&w() * &lin2);
    inner.scale(&(&q().inv().expect("q") - &q()))
}

/// Bracket minus the simplification as printed, with `q + q^-1` as the
/// middle coefficient. Nonzero: the printed coefficient should be `q + q^2`.
pub fn identity2_display_residual() -> MultiPoly {
    let m = &q() + &q().inv().expect("q");
    &identity2_bracket() - &identity2_simplification(&m)
}

/// Bracket minus the simplification with `q + q^2`.
pub fn identity2_simplification_residual() -> MultiPoly {
    let m = &q() + &q().pow(2);
    &identity2_bracket() - &identity2_simplification(&m)
}

fn vandermonde_like(s: &ExactScalar, t: &ExactScalar) -> MultiPoly {
    // prod_{i<j} (s z_i - t z_j)
    let zs = [z1(), z2(), z3()];
    let mut acc = c(ExactScalar::one());
    for i in 0..3 {
        for j in i + 1..3 {
            acc = &acc * &(&zs[i].scale(s) - &zs[j].scale(t));
        }
    }
    acc
}

/// The antisymmetrized quartic sum.
pub fn identity2_sum() -> MultiPoly {
    let prod = vandermonde_like(&ExactScalar::one(), &q().inv().expect("q"));
    antisymmetrize(&(&identity2_bracket() * &prod))
}

pub fn identity3_sum() -> MultiPoly {
    let m = &q() + &q().pow(2);
    let lin3 = &(&z1() - &z2().scale(&m)) + &z3().scale(&q().pow(3));
    antisymmetrize(&(&lin3 * &vandermonde_like(&q(), &ExactScalar::one())))
}

fn at_q_one(p: &MultiPoly) -> Vec<String> {
    // the coefficients here are Laurent polynomials, so the limit exists
    p.map_coeffs(|c| classical_limit(c).map(|r| ExactScalar::from_bigrational(&r)).unwrap_or_else(|_| ExactScalar::one()))
        .term_strings()
}

pub fn check_identity2() -> VerificationReport {
    let mut rep = VerificationReport::new("identities", None);
    let sum = identity2_sum();
    rep.push(CheckRecord::timed("identity2.antisymmetrized", json!({"q": "symbolic"}), || sum.term_strings()));
    rep.push(CheckRecord::timed("identity2.antisymmetrized", json!({"q": "1"}), || at_q_one(&sum)));
    rep.push(CheckRecord::timed("identity2.simplification", json!({"middle": "q+q^2"}), || {
        identity2_simplification_residual().term_strings()
    }));
    rep
}

pub fn check_identity3() -> VerificationReport {
    let mut rep = VerificationReport::new("identities", None);
    let sum = identity3_sum();
    // the symbolic sum and its value at q = 1 in one record
    rep.push(CheckRecord::timed("identity3.antisymmetrized", json!({"q": "symbolic", "also_at": "1"}), || {
        let mut res = sum.term_strings();
        res.extend(at_q_one(&sum).into_iter().map(|t| format!("at q=1: {t}")));
        res
    }));
    rep
}

/// Every identity, q-power and contraction check.
pub fn check_all_identities() -> VerificationReport {
    let mut rep = VerificationReport::new("identities", None);
    for r in [check_qpow(), check_identity1(), check_identity2(), check_identity3(), check_ope_factors()] {
        rep.merge(r);
    }
    rep.sort();
    rep
}
