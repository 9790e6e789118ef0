use super::*;
use crate::lattice::{WeightA, WeightC};
use proptest::prelude::*;

fn q() -> ExactScalar {
    ExactScalar::q_pow(HalfExponent::ONE)
}

fn lat(n: usize, i: usize) -> FockVector {
    FockVector::from_monomial(
        FockMonomial::lattice(WeightC::fundamental(n, i).unwrap(), WeightA::fundamental(n, i).unwrap()).unwrap(),
    )
}

#[test]
fn bracket_examples() {
    let n = 2;
    assert!(heis_bracket(n, HeisenGen::a(1, 1), HeisenGen::a(1, -1)).unwrap().is_one());
    let long = heis_bracket(n, HeisenGen::a(2, 1), HeisenGen::a(2, -1)).unwrap();
    assert_eq!(long, &q() + &q().inv().unwrap());
    assert!(heis_bracket(n, HeisenGen::a(1, 1), HeisenGen::b(1, -1)).unwrap().is_zero());
    assert!(heis_bracket(n, HeisenGen::a(1, 2), HeisenGen::a(1, -1)).unwrap().is_zero());
    assert!(heis_bracket(n, HeisenGen::b(2, 1), HeisenGen::b(1, -1)).is_err());
}

#[test]
fn bracket_matches_central_term() {
    // [a_i(k), a_j(-k)] = [(a_i|a_j) k]/k * (g^k - g^-k)/(q - q^-1) at g = q
    for n in 2..=3 {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=4 {
                    let x = root_inner(n, i, j).unwrap();
                    let gamma = &(&q().pow(k) - &q().pow(-k)) / &(&q() - &q().inv().unwrap());
                    let expect = &(&q_int_frac(x, k) * &ExactScalar::from_ratio(1, k)) * &gamma;
                    let got = heis_bracket(n, HeisenGen::a(i, k), HeisenGen::a(j, -k)).unwrap();
                    assert_eq!(got, expect, "n={n} i={i} j={j} k={k}");
                }
            }
        }
    }
}

#[test]
fn bracket_antisymmetric() {
    let n = 3;
    let mut gens = Vec::new();
    for m in -4..=4 {
        for i in 1..=n {
            gens.push(HeisenGen::a(i, m));
        }
        for i in 1..n {
            gens.push(HeisenGen::b(i, m));
        }
    }
    for &g1 in &gens {
        for &g2 in &gens {
            let a = heis_bracket(n, g1, g2).unwrap();
            let b = heis_bracket(n, g2, g1).unwrap();
            assert_eq!(a, -b);
        }
    }
}

#[test]
fn heisenberg_action_examples() {
    let n = 2;
    let fs = FockSpace::new(n).unwrap();
    let vac = FockVector::vacuum(n);
    assert!(fs.apply_heisenberg(HeisenGen::a(1, 2), &vac).unwrap().is_zero());
    let v = fs.apply_heisenberg(HeisenGen::a(1, -1), &vac).unwrap();
    assert_eq!(fs.apply_heisenberg(HeisenGen::a(1, 1), &v).unwrap(), vac);
    let w = fs.apply_heisenberg(HeisenGen::b(1, -1), &vac).unwrap();
    assert_eq!(w.to_string(), "b1(-1) e[0,0] t[]");
    // a_1(1) a_1(-1)^2 |0> = 2 a_1(-1) |0>
    let v2 = fs.apply_heisenberg(HeisenGen::a(1, -1), &v).unwrap();
    assert_eq!(fs.apply_heisenberg(HeisenGen::a(1, 1), &v2).unwrap(), v.scale(&ExactScalar::from_int(2)));
}

#[test]
fn zero_modes() {
    let n = 2;
    let l1 = lat(n, 1);
    assert_eq!(zero_mode_a(1, &l1), l1.scale(&ExactScalar::from_ratio(1, 2)));
    assert!(zero_mode_a(2, &FockVector::vacuum(n)).is_zero());
    assert_eq!(zero_mode_b(1, &l1), l1.scale(&ExactScalar::from_ratio(1, 2)));
}

#[test]
fn translate_examples() {
    let n = 2;
    let vac = FockVector::vacuum(n);
    let an = WeightC::simple_root(n, n).unwrap();
    let v = translate(&an, &WeightA::zero(n), &vac).unwrap();
    assert_eq!(v.to_string(), "e[0,2] t[]");
    let a1 = WeightC::simple_root(n, 1).unwrap();
    let t1 = WeightA::simple_root(n, 1).unwrap();
    let w = translate(&a1, &t1, &lat(n, 1)).unwrap();
    assert_eq!(w.to_string(), "e[2,-1] t[3]");
    // at rank 2 alpha~_1 has even pairings, so the unpaired shift is allowed
    assert!(translate(&a1, &WeightA::zero(n), &vac).is_ok());
    let a1 = WeightC::simple_root(3, 1).unwrap();
    let bad = translate(&a1, &WeightA::zero(3), &FockVector::vacuum(3));
    assert!(matches!(bad, Err(Error::ConstraintViolation(_))));
}

#[test]
fn sign_examples() {
    let n = 2;
    assert_eq!(sign_two_a(1, &FockVector::vacuum(n)), FockVector::vacuum(n));
    let l1 = lat(n, 1);
    assert_eq!(sign_two_a(1, &l1), l1.neg());
    let a1: FockVector = "e[1,-1] t[2]".parse().unwrap();
    assert_eq!(sign_two_a(1, &a1), a1);
}

#[test]
fn grade_examples() {
    let n = 2;
    assert_eq!(grade(&FockVector::vacuum(n)).unwrap(), Ratio::from_integer(0));
    let v: FockVector = "a1(-2) e[0,0]".parse().unwrap();
    assert_eq!(grade(&v).unwrap(), Ratio::from_integer(-2));
    let v: FockVector = "e[0,2] t[]".parse().unwrap();
    assert_eq!(grade(&v).unwrap(), Ratio::from_integer(-1));
    let mixed: FockVector = "e[0,0] + a1(-1) e[0,0]".parse().unwrap();
    assert!(grade(&mixed).is_err());
}

#[test]
fn weight_examples() {
    for n in 2..=4 {
        for i in 1..=n {
            let (w, level) = weight(&lat(n, i)).unwrap();
            assert_eq!(level, 1);
            for j in 1..=n {
                let expect = if j != i {
                    HalfExponent::ZERO
                } else if j < n {
                    HalfExponent::HALF
                } else {
                    HalfExponent::ONE
                };
                assert_eq!(w[j - 1], expect);
            }
        }
    }
    let (w, _) = weight(&"e[1,-1,0] t[2,-1]".parse().unwrap()).unwrap();
    assert_eq!(w, vec![HalfExponent::ONE, HalfExponent::from_doubled(-1), HalfExponent::ZERO]);
}

#[test]
fn text_round_trip_and_errors() {
    for s in [
        "a1(-1)^2 b1(-2) e[1,0] t[1]",
        "(q^2+1+q^-2) a2(-3) e[0,0] t[] + (-1) e[1,1] t[]",
        "(q^1/2+q^-1/2)^-1 b2(-1) a1(-1) e[1,0,0] t[1,0]",
    ] {
        let v: FockVector = s.parse().unwrap();
        assert_eq!(v.to_string().parse::<FockVector>().unwrap(), v, "{s}");
    }
    let v: FockVector = "a1(-1)^2 b1(-2) e[1,0] t[1]".parse().unwrap();
    assert_eq!(v.to_string(), "a1(-1)^2 b1(-2) e[1,0] t[1]");
    assert!("e[1,0] t[0]".parse::<FockVector>().is_err());
    assert!("a1(2) e[0,0]".parse::<FockVector>().is_err());
    assert!("e[0,0] t[1,2]".parse::<FockVector>().is_err());
    assert!("e[0,0] + e[0,0,0]".parse::<FockVector>().is_err());
    match "a1(-1) x".parse::<FockVector>() {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
        other => panic!("{other:?}"),
    }
}

fn test_vector() -> impl Strategy<Value = FockVector> {
    let gens = prop::collection::vec((0usize..5, 1i64..=2), 0..3);
    (gens, prop::sample::select(vec![0usize, 1, 2, 3])).prop_map(|(gs, base)| {
        let n = 3;
        let mut m = FockMonomial::lattice(
            WeightC::fundamental(n, base).unwrap(),
            WeightA::fundamental(n, base).unwrap(),
        )
        .unwrap();
        for (g, level) in gs {
            let c = if g < n {
                Creation { family: Family::A, index: g + 1, level }
            } else {
                Creation { family: Family::B, index: g - n + 1, level }
            };
            m = m.times(c);
        }
        FockVector::from_monomial(m)
    })
}

fn any_gen() -> impl Strategy<Value = HeisenGen> {
    (0usize..5, -3i64..=3).prop_map(|(g, mode)| {
        if g < 3 {
            HeisenGen::a(g + 1, mode)
        } else {
            HeisenGen::b(g - 2, mode)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oscillators_satisfy_brackets(v in test_vector(), g1 in any_gen(), g2 in any_gen()) {
        let fs = FockSpace::new(3).unwrap();
        let ab = fs.apply_heisenberg(g1, &fs.apply_heisenberg(g2, &v).unwrap()).unwrap();
        let ba = fs.apply_heisenberg(g2, &fs.apply_heisenberg(g1, &v).unwrap()).unwrap();
        let br = heis_bracket(3, g1, g2).unwrap();
        prop_assert_eq!(ab.sub(&ba), v.scale(&br));
    }

    #[test]
    fn creation_lowers_grade(v in test_vector(), g in any_gen()) {
        prop_assume!(g.mode < 0);
        let fs = FockSpace::new(3).unwrap();
        let w = fs.apply_heisenberg(g, &v).unwrap();
        prop_assert_eq!(grade(&w).unwrap(), grade(&v).unwrap() + g.mode);
    }

    #[test]
    fn printed_vectors_parse_back(v in test_vector()) {
        prop_assert_eq!(v.to_string().parse::<FockVector>().unwrap(), v);
    }
}
