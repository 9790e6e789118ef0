//! Acceptance run: one PASS/FAIL line per criterion. A criterion passes when
//! every residual is exactly zero and it finishes inside its time budget.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use symplectic_vo::lattice::{check_quasi_cocycle_axioms, d};
use symplectic_vo::qscalar::{classical_limit, q_binom, q_factorial, q_int, q_int_frac};
use symplectic_vo::verify::{
    check_identity1, check_identity2, check_identity3, check_ope_factors, check_qpow, CheckConfig, Relation,
    VerificationReport, Verifier,
};
use symplectic_vo::HalfExponent;

struct Outcome {
    failed: usize,
    total: usize,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failed: 0, total: 0, notes: Vec::new() }
    }

    fn add(&mut self, rep: &VerificationReport) {
        self.total += rep.summary.total;
        self.failed += rep.summary.failed;
        for f in rep.failures().take(3) {
            let first = f.residual.first().cloned().unwrap_or_default();
            self.notes.push(format!("{} {:?}: {first}", f.name, f.params));
        }
    }

    fn flag(&mut self, ok: bool, what: impl Into<String>) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            self.notes.push(what.into());
        }
    }
}

fn criterion(id: u32, title: &str, budget: Duration, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut out = Outcome::new();
    body(&mut out);
    let took = start.elapsed();
    let in_time = took <= budget;
    let ok = out.failed == 0 && out.total > 0 && in_time;
    println!(
        "criterion {id}: {} {title}: {} checks, {} failed, {:.2} s (budget {} s)",
        if ok { "PASS" } else { "FAIL" },
        out.total,
        out.failed,
        took.as_secs_f64(),
        budget.as_secs()
    );
    for n in &out.notes {
        println!("    {n}");
    }
    if !in_time {
        println!("    over the time budget");
    }
    ok
}

fn relations(n: usize, rel: Relation, lo: i64, hi: i64) -> VerificationReport {
    let cfg = CheckConfig::new(n).with_window(lo, hi).with_serre_window(lo, hi).with_relation(rel);
    Verifier::new(&cfg).unwrap().relations().unwrap()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn binomial(m: i64, r: i64) -> i64 {
    (0..r).fold(1, |acc, k| acc * (m - k) / (k + 1))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut all = Vec::new();

    all.push(criterion(1, "q-power identities to order 16", secs(1), |o| o.add(&check_qpow())));

    all.push(criterion(2, "combinatorial identities", secs(3), |o| {
        for rep in [check_identity1(), check_identity2(), check_identity3()] {
            let slow = rep.checks.iter().map(|c| c.elapsed_ms).sum::<u64>() >= 1000;
            o.flag(!slow, format!("{:?} over 1 s", rep.checks.first().map(|c| &c.name)));
            o.add(&rep);
        }
    }));

    all.push(criterion(3, "OPE contraction factors to order 12", secs(5), |o| o.add(&check_ope_factors())));

    all.push(criterion(4, "cocycle table and quasi-cocycle axioms, n = 2, 3, 4", secs(1), |o| {
        for n in 2..=4 {
            o.add(&check_quasi_cocycle_axioms(n).unwrap());
        }
    }));

    all.push(criterion(5, "relation sweeps R2 R4 R5 R6 R7 R8, n = 2, 3, window [-2, 2]", secs(600), |o| {
        for n in [2, 3] {
            for rel in [Relation::R2, Relation::R4, Relation::R5, Relation::R6, Relation::R7, Relation::R8] {
                o.add(&relations(n, rel, -2, 2));
            }
        }
    }));

    all.push(criterion(6, "Serre relations and branch-wise claims, n = 2, 3, window [-1, 1]", secs(900), |o| {
        for n in [2, 3] {
            let rep = relations(n, Relation::Serre, -1, 1);
            let orders: Vec<u64> = rep
                .checks
                .iter()
                .filter(|c| c.name == "serre")
                .filter_map(|c| c.params.get("order").and_then(|v| v.as_u64()))
                .collect();
            for m in [1, 2, 3] {
                // rank 2 has no pair of distant roots
                if n == 2 && m == 1 {
                    continue;
                }
                o.flag(orders.contains(&m), format!("n = {n}: no Serre check of order {m}"));
            }
            if n == 3 {
                let sub = rep.checks.iter().filter(|c| c.name.starts_with("serre.sub")).count();
                o.flag(sub > 0, "no branch-wise checks ran");
            }
            o.add(&rep);
        }
    }));

    all.push(criterion(7, "highest weight vectors and the Lemma, n = 2, 3", secs(120), |o| {
        for n in [2, 3] {
            let v = Verifier::new(&CheckConfig::new(n).with_window(-1, 2)).unwrap();
            let hwv = v.hwv().unwrap();
            o.flag(hwv.summary.total == n + 1, format!("n = {n}: expected {} hwv records", n + 1));
            o.add(&hwv);
            o.add(&v.lemma().unwrap());
        }
    }));

    all.push(criterion(8, "classical limits of the q-numbers used above", secs(1), |o| {
        let half = HalfExponent::HALF;
        for base in [half, HalfExponent::ONE, HalfExponent::int(2)] {
            for k in -16..=16 {
                let got = classical_limit(&q_int(k, base).unwrap()).unwrap();
                o.flag(got == int(k), format!("[{k}] base q^{base} -> {got}"));
            }
            for m in 0..=4 {
                for r in 0..=m {
                    let got = classical_limit(&q_binom(m, r, base).unwrap()).unwrap();
                    o.flag(got == int(binomial(m, r)), format!("[{m} {r}] base q^{base} -> {got}"));
                }
                let fact: i64 = (1..=m).product();
                let got = classical_limit(&q_factorial(m, base).unwrap()).unwrap();
                o.flag(got == int(fact), format!("[{m}]! -> {got}"));
            }
        }
        for n in [2, 3, 4] {
            for i in 1..=n {
                let di = d(n, i).unwrap();
                let got = classical_limit(&q_int(2, di).unwrap()).unwrap();
                o.flag(got == int(2), format!("[2]_{i} at rank {n} -> {got}"));
            }
        }
        for a2 in -4..=4 {
            let a = HalfExponent::from_doubled(a2);
            for k in -16..=16 {
                let got = classical_limit(&q_int_frac(a, k)).unwrap();
                let want = BigRational::new((a2 * k).into(), 2.into());
                o.flag(got == want, format!("[{a} * {k}] -> {got}"));
            }
        }
    }));

    assert!(all.iter().all(|&ok| ok), "some acceptance criteria failed");
}
