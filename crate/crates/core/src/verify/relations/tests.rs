use super::*;

fn failures(rep: &VerificationReport) -> Vec<String> {
    rep.failures()
        .map(|c| format!("{} {:?} {:?}", c.name, c.params, c.residual.first()))
        .collect()
}

#[test]
fn default_vector_counts() {
    assert_eq!(default_test_vectors(2, 2).unwrap().len(), 30);
    assert_eq!(default_test_vectors(3, 2).unwrap().len(), 60);
}

#[test]
fn tuples_and_permutations() {
    assert_eq!(sorted_tuples(2, -1, 1).len(), 6);
    assert_eq!(sorted_tuples(3, -1, 1).len(), 10);
    assert_eq!(permutations(&[0, 0, 1]), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    assert_eq!(permutations(&[-1, 0, 1]).len(), 6);
    assert_eq!(dominant_weights(2, 2), vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![1, 1], vec![2, 1], vec![2, 2]]);
}

#[test]
fn relation_names_round_trip() {
    for r in ["r2", "r4", "r5", "r6", "r7", "r8", "serre", "all"] {
        assert_eq!(r.parse::<Relation>().unwrap().to_string(), r);
    }
    assert!("r9".parse::<Relation>().is_err());
}

#[test]
fn config_validation() {
    assert!(CheckConfig::new(1).validate().is_err());
    assert!(CheckConfig::new(2).with_window(1, 0).validate().is_err());
    assert!(CheckConfig::new(2).with_window(-20, 0).validate().is_err());
    let wrong = CheckConfig::new(2).with_vectors(vec![FockVector::vacuum(3)]);
    assert!(wrong.validate().is_err());
}

#[test]
fn rank_two_sweep_small_window() {
    let cfg = CheckConfig::new(2).with_window(-1, 1);
    let rep = verify_relations(&cfg).unwrap();
    assert!(rep.passed(), "{:#?}", failures(&rep));
    assert!(rep.summary.total > 0);
}

#[test]
fn vacuum_examples() {
    let cfg = CheckConfig::new(2).with_window(-1, 1).with_vectors(vec![FockVector::vacuum(2)]);
    let rep = verify_r7(&cfg, 1, 2, Sign::Plus).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.summary.total, 1);
    let rep = verify_r8(&cfg, 1, 1).unwrap();
    assert!(rep.passed());
    assert!(verify_serre(&cfg, 1, 1).is_err());
}

#[test]
fn lemma_and_hwv_rank_two() {
    let cfg = CheckConfig::new(2);
    let rep = verify_hwv(&cfg).unwrap();
    assert_eq!(rep.summary.total, 3);
    assert!(rep.passed(), "{:#?}", failures(&rep));
    let rep = verify_lemma(&cfg).unwrap();
    assert!(rep.passed(), "{:#?}", failures(&rep));
}

#[test]
fn a_wrong_relation_is_caught() {
    // R7 with the contraction exponent flipped fails somewhere
    let cfg = CheckConfig::new(2);
    let v = Verifier::new(&cfg).unwrap();
    let a = q_to(-v.ip(1, 2));
    let mut nonzero = 0;
    for vec in v.vectors().iter().take(10) {
        let mut c = WordCache::new(v.realization(), vec);
        for m in -2..=1 {
            for l in -2..=1 {
                let s = Sign::Plus;
                let r = c
                    .combo(&[
                        (one(), vec![x(s, 1, m + 1), x(s, 2, l)]),
                        (-a.clone(), vec![x(s, 1, m), x(s, 2, l + 1)]),
                        (one(), vec![x(s, 2, l + 1), x(s, 1, m)]),
                        (-a.clone(), vec![x(s, 2, l), x(s, 1, m + 1)]),
                    ])
                    .unwrap();
                nonzero += usize::from(!r.is_zero());
            }
        }
    }
    assert!(nonzero > 0);
}
