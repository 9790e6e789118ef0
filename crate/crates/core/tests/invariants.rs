use proptest::prelude::*;

use symplectic_vo::fock::{grade, parse_vector, FockVector};
use symplectic_vo::qseries::{qpow_exp, qpow_product, TruncatedSeries};
use symplectic_vo::verify::default_test_vectors;
use symplectic_vo::vertex::{Realization, Sign};
use symplectic_vo::{ExactScalar, HalfExponent};

fn half_exponent() -> impl Strategy<Value = HalfExponent> {
    (-8i64..=8).prop_filter("nonzero", |d| *d != 0).prop_map(HalfExponent::from_doubled)
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// A rank, one of its default test vectors, and a mode `x^(+-)_(i,k)`.
fn mode_on_vector() -> impl Strategy<Value = (usize, FockVector, Sign, usize, i64)> {
    (2usize..=3).prop_flat_map(|n| {
        let vs = default_test_vectors(n, 2).unwrap();
        (Just(n), prop::sample::select(vs), sign(), 1..=n, -2i64..=2)
    })
}

fn max_level(v: &FockVector) -> i64 {
    v.terms().map(|(m, _)| m.level()).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn qpow_formulas_agree(a in half_exponent()) {
        let order = HalfExponent::int(16);
        let p = qpow_product(a, order).unwrap();
        prop_assert_eq!(qpow_exp(a, order).unwrap(), p.clone());
        let inv = p.mul(&qpow_product(-a, order).unwrap());
        prop_assert!(inv.equal_to(&TruncatedSeries::one(order), order).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modes_shift_the_grade((n, v, s, i, k) in mode_on_vector()) {
        let r = Realization::new(n).unwrap();
        let out = r.apply_x_mode(s, i, k, &v).unwrap();
        if !out.is_zero() {
            prop_assert_eq!(grade(&out).unwrap(), grade(&v).unwrap() + k);
        }
    }

    #[test]
    fn branches_add_up((n, v, s, i, k) in mode_on_vector()) {
        // only the short roots split into two branches
        let i = i.min(n - 1);
        let r = Realization::new(n).unwrap();
        let mut sum = FockVector::zero();
        for b in Sign::both() {
            sum.add_assign(&r.apply_x_mode_split(s, i, k, b, &v).unwrap());
        }
        prop_assert_eq!(sum, r.apply_x_mode(s, i, k, &v).unwrap());
    }

    #[test]
    fn k_conjugation((n, v, s, i, k) in mode_on_vector(), j in 1usize..=3) {
        let j = j.min(n);
        let r = Realization::new(n).unwrap();
        let lhs = r.apply_k(j, 1, &r.apply_x_mode(s, i, k, &r.apply_k(j, -1, &v).unwrap()).unwrap()).unwrap();
        let ip = symplectic_vo::lattice::root_inner(n, j, i).unwrap();
        let e = if s == Sign::Plus { ip } else { -ip };
        let rhs = r.apply_x_mode(s, i, k, &v).unwrap().scale(&ExactScalar::q_pow(e));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn outputs_print_and_parse_back((n, v, s, i, k) in mode_on_vector()) {
        let r = Realization::new(n).unwrap();
        let out = r.apply_x_mode(s, i, k, &v).unwrap();
        prop_assert_eq!(parse_vector(&out.to_string(), Some(n)).unwrap(), out);
    }

    #[test]
    fn psi_vanishes_above_the_level((n, v, _s, i, _k) in mode_on_vector(), extra in 1i64..=2) {
        let r = Realization::new(n).unwrap();
        let m = max_level(&v) + extra;
        prop_assert!(r.apply_psi_mode(i, m, &v).unwrap().is_zero());
    }
}
