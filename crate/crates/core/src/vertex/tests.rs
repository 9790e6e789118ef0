use super::*;
use crate::lattice::d;
use crate::fock::FockMonomial;

fn lat(n: usize, i: usize) -> FockVector {
    if i == 0 {
        return FockVector::vacuum(n);
    }
    let m = FockMonomial::lattice(WeightC::fundamental(n, i).unwrap(), WeightA::fundamental(n, i).unwrap()).unwrap();
    FockVector::from_monomial(m)
}

fn vecs(n: usize) -> Vec<FockVector> {
    let r = Realization::new(n).unwrap();
    let mut out = Vec::new();
    for i in 0..=n {
        let v = lat(n, i);
        out.push(v.clone());
        out.push(r.apply_a(1, -1, &v).unwrap());
        out.push(r.fock().apply_heisenberg(HeisenGen::b(1, -1), &v).unwrap());
    }
    out
}

fn r8_failures(r: &Realization) -> usize {
    let n = r.rank();
    let mut bad = 0;
    for v in vecs(n) {
        for i in 1..=n {
            for j in 1..=n {
                for (m, l) in [(0, 0), (1, -1), (0, 1), (-1, 0), (-2, 1)] {
                    let a = r.apply_x_mode(Sign::Plus, i, m, &r.apply_x_mode(Sign::Minus, j, l, &v).unwrap()).unwrap();
                    let b = r.apply_x_mode(Sign::Minus, j, l, &r.apply_x_mode(Sign::Plus, i, m, &v).unwrap()).unwrap();
                    let mut lhs = a.sub(&b);
                    if i == j {
                        let qi = ExactScalar::q_pow(d(n, i).unwrap());
                        let f = (&qi - &qi.inv().unwrap()).inv().unwrap();
                        let psi = r.apply_psi_mode(i, m + l, &v).unwrap();
                        let phi = r.apply_phi_mode(i, m + l, &v).unwrap();
                        lhs.add_scaled(&psi, &-(&f * &ExactScalar::q_pow(HalfExponent::from_doubled(m - l))));
                        lhs.add_scaled(&phi, &(&f * &ExactScalar::q_pow(HalfExponent::from_doubled(l - m))));
                    }
                    if !lhs.is_zero() {
                        bad += 1;
                    }
                }
            }
        }
    }
    bad
}

#[test]
fn creates_root_from_vacuum() {
    let r = Realization::new(2).unwrap();
    let out = r.apply_x_mode(Sign::Plus, 2, -1, &FockVector::vacuum(2)).unwrap();
    assert_eq!(out.to_string(), "e[0,2] t[]");
}

#[test]
fn branches_sum_to_full_operator() {
    let r = Realization::new(3).unwrap();
    for v in vecs(3) {
        for s in Sign::both() {
            for k in -2..=1 {
                let full = r.apply_x_mode(s, 1, k, &v).unwrap();
                let p = r.apply_x_mode_split(s, 1, k, Sign::Plus, &v).unwrap();
                let m = r.apply_x_mode_split(s, 1, k, Sign::Minus, &v).unwrap();
                assert_eq!(full, p.add(&m));
            }
        }
    }
    assert!(r.apply_x_mode_split(Sign::Plus, 3, 0, Sign::Plus, &FockVector::vacuum(3)).is_err());
}

#[test]
fn branch_shifts_tilde_weight() {
    let r = Realization::new(2).unwrap();
    let v = FockVector::vacuum(2);
    let p = r.apply_x_mode_split(Sign::Plus, 1, -1, Sign::Plus, &v).unwrap();
    let m = r.apply_x_mode_split(Sign::Plus, 1, -1, Sign::Minus, &v).unwrap();
    for (mono, _) in p.terms() {
        assert_eq!(mono.lambda_tilde().pairings(), &[2]);
    }
    for (mono, _) in m.terms() {
        assert_eq!(mono.lambda_tilde().pairings(), &[-2]);
    }
}

#[test]
fn lowering_fundamental_vectors() {
    for n in [2, 3] {
        let r = Realization::new(n).unwrap();
        for i in 1..=n {
            let v = lat(n, i);
            for j in 1..=n {
                let x0 = r.apply_x_mode(Sign::Minus, j, 0, &v).unwrap();
                let x1 = r.apply_x_mode(Sign::Minus, j, 1, &v).unwrap();
                assert!(x1.is_zero());
                if j != i {
                    assert!(x0.is_zero());
                    continue;
                }
                let lam = WeightC::fundamental(n, i).unwrap();
                let sign = -eps_char(i, &lam).unwrap();
                let target = FockMonomial::lattice(
                    lam.sub(&WeightC::simple_root(n, i).unwrap()),
                    WeightA::fundamental(n, i).unwrap().sub(&WeightA::simple_root(n, i).unwrap()),
                )
                .unwrap();
                assert_eq!(x0, FockVector::from_term(target, ExactScalar::from_int(sign)), "n={n} i={i}");
            }
        }
    }
}

#[test]
fn literal_lowering_carries_quarter_phase() {
    let r = Realization::with_options(2, ZConvention::Uniform, Normalization::Literal).unwrap();
    let out = r.apply_x_mode(Sign::Minus, 1, 0, &lat(2, 1)).unwrap();
    assert_eq!(out.to_string(), "(-q^1/4) e[0,1] t[-1]");
    let out = r.apply_x_mode(Sign::Minus, 2, 0, &lat(2, 2)).unwrap();
    assert_eq!(out.to_string(), "e[1,-1] t[]");
}

#[test]
fn commutator_needs_the_repair() {
    for n in [2, 3] {
        assert_eq!(r8_failures(&Realization::new(n).unwrap()), 0);
        let lit = Realization::with_options(n, ZConvention::Uniform, Normalization::Literal).unwrap();
        assert!(r8_failures(&lit) > 0);
        let disp = Realization::with_convention(n, ZConvention::Displayed).unwrap();
        assert!(r8_failures(&disp) > 0);
    }
}

#[test]
fn psi_phi_low_modes() {
    let r = Realization::new(2).unwrap();
    for v in vecs(2) {
        let k = r.apply_k(1, 1, &v).unwrap();
        assert_eq!(r.apply_psi_mode(1, 0, &v).unwrap(), k);
        assert_eq!(r.apply_phi_mode(1, 0, &v).unwrap(), r.apply_k(1, -1, &v).unwrap());
        assert!(r.apply_psi_mode(1, -1, &v).unwrap().is_zero());
        assert!(r.apply_phi_mode(1, 1, &v).unwrap().is_zero());
    }
    assert!(r.apply_psi_mode(1, 1, &FockVector::vacuum(2)).unwrap().is_zero());
}

#[test]
fn e0_bracket_defaults() {
    let s = BracketSpec::default_for(2);
    assert_eq!(s.ops.len(), 3);
    assert_eq!(s.params, vec![ExactScalar::q_pow(-HalfExponent::ONE), ExactScalar::one()]);
    let s = BracketSpec::default_for(4);
    assert_eq!(s.ops.len(), 7);
    assert_eq!(s.params.len(), 6);
    assert_eq!(s.ops[6], ModeOp::x_minus(1, 1));
}

#[test]
fn plain_bracket_is_commutator() {
    let r = Realization::new(2).unwrap();
    let v = lat(2, 1);
    let (a, b) = (ModeOp::x_plus(1, 0), ModeOp::x_minus(1, 0));
    let br = r.apply_bracket(&[a, b], &[ExactScalar::one()], &v).unwrap();
    let ab = r.apply_mode(&a, &r.apply_mode(&b, &v).unwrap()).unwrap();
    let ba = r.apply_mode(&b, &r.apply_mode(&a, &v).unwrap()).unwrap();
    assert_eq!(br, ab.sub(&ba));
}

#[test]
fn operator_words() {
    let ops = parse_operators("x+_1[0]  x-_2[-1] psi_1[2] phi_1[-1] a_1[-3] K_2 K_2^-1 e_1 e0").unwrap();
    let text: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
    assert_eq!(
        text.join(" "),
        "x+_1[0] x-_2[-1] psi_1[2] phi_1[-1] a_1[-3] K_2 K_2^-1 x+_1[0] e0"
    );
    assert!(parse_operators("x*_1[0]").is_err());
    assert!(parse_operators("x+_0[0]").is_err());
    assert!(parse_operators("x+_1[0").is_err());
    assert!(parse_operators("").unwrap().is_empty());
    // rightmost acts first
    let r = Realization::new(2).unwrap();
    let v = FockVector::vacuum(2);
    let w = r.apply_product(&parse_operators("a_1[1] x+_2[-1]").unwrap(), &v).unwrap();
    let direct = r.apply_a(1, 1, &r.apply_x_mode(Sign::Plus, 2, -1, &v).unwrap()).unwrap();
    assert_eq!(w, direct);
}
