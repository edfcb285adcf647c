//! The invariant suite behind `nichols verify`: one seeded check per module
//! invariant, each reporting pass/fail counts and its first counterexample.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braiding::{DiagonalBraiding, GroupDegree, TwistClass};
use crate::classifier::{classify_pipeline, classify_theorem, classify_theorem_roots};
use crate::conditions::{evaluate_conditions, Condition, Limits};
use crate::cyclo::{CyclotomicNumber, RootOfUnity};
use crate::jobs::JobConfig;
use crate::qcomb::{q_binom, q_fact};
use crate::root_vectors::{Coefficients, RootVectorContext};
use crate::subquotients::{descent_chain, DescentFamily, DescentVerdict};
use crate::tensor::{derive, group_act, hilbert_report, pair_element, Precision, TensorElement, Word};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: u64,
    pub failed: u64,
}

impl VerifyReport {
    pub fn alarm(&self) -> bool {
        self.failed > 0
    }
}

type Check = fn(&mut ChaCha8Rng, &JobConfig) -> CheckResult;

const CHECKS: [(&str, Check); 10] = [
    ("cyclo/field-axioms", field_axioms),
    ("qcomb/binomial-quotient", binomial_quotient),
    ("braiding/exchange-invariance", exchange_invariance),
    ("tensor/leibniz", leibniz),
    ("tensor/known-dimensions", known_dimensions),
    ("root-vectors/closed-forms", closed_forms),
    ("conditions/worked-examples", worked_examples),
    ("classifier/agreement", agreement),
    ("classifier/galois-invariance", galois_invariance),
    ("subquotients/descent", descent),
];

/// Runs every check; each gets its own generator derived from the seed.
pub fn run_verify(config: &JobConfig) -> VerifyReport {
    let checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(k as u64));
            CheckResult {
                name,
                ..check(&mut rng, config)
            }
        })
        .collect();
    VerifyReport {
        passed: checks.iter().map(|c| c.passed).sum(),
        failed: checks.iter().map(|c| c.failed).sum(),
        checks,
    }
}

fn random_root(rng: &mut impl Rng, orders: &[u32]) -> RootOfUnity {
    let n = *orders.choose(rng).expect("nonempty");
    RootOfUnity::new(rng.gen_range(0..n as i64), n)
}

fn random_element(rng: &mut impl Rng, n: u32) -> CyclotomicNumber {
    (0..3).fold(CyclotomicNumber::zero(), |acc, _| {
        acc + CyclotomicNumber::root(rng.gen_range(0..n as i64), n) * CyclotomicNumber::from_integer(rng.gen_range(-3..=3))
    })
}

fn field_axioms(rng: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    for n in [1u32, 3, 4, 5, 8, 12, 24] {
        for _ in 0..6 {
            let [a, b, c] = [0; 3].map(|_| random_element(rng, n));
            out.record(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity at conductor {n}"));
            out.record(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity at conductor {n}"));
            if !a.is_zero() {
                out.record((&a * &a.inverse().expect("nonzero")).is_one(), || format!("inverse at conductor {n}"));
            }
        }
    }
    out
}

fn binomial_quotient(rng: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    for _ in 0..20 {
        let p = random_root(rng, &[5, 7, 8, 9, 12]).to_cyclotomic();
        for i in 0..8 {
            for j in 0..=i {
                let den = &q_fact(j, &p) * &q_fact(i - j, &p);
                if den.is_zero() {
                    continue;
                }
                let lhs = q_binom(i, j, &p).expect("j <= i");
                out.record(lhs == &q_fact(i, &p) / &den, || format!("binom({i},{j}) at {p}"));
            }
        }
    }
    out
}

fn exchange_invariance(rng: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    for _ in 0..200 {
        let [q, r, s] = [0; 3].map(|_| random_root(rng, &[1, 2, 3, 4, 6, 8, 12, 24, 30]));
        let tc = TwistClass::from_roots(q, r, s);
        let a = classify_theorem(&tc);
        let b = classify_theorem(&tc.swapped());
        out.record(a.outcome == b.outcome && a.labels == b.labels, || format!("{tc}"));
    }
    out
}

/// Two words with the same letters, so the element is homogeneous.
fn random_tensor(rng: &mut impl Rng, br: &Arc<DiagonalBraiding>, len: usize) -> TensorElement {
    let n = br.root_order().unwrap_or(1).max(2);
    let mut letters: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=2u8)).collect();
    (0..2).fold(TensorElement::zero(br), |acc, _| {
        letters.shuffle(rng);
        let w = Word::new(letters.clone()).expect("letters 1, 2");
        let t = TensorElement::monomial(br, w, CyclotomicNumber::root(rng.gen_range(0..n as i64), n));
        acc.try_add(&t).expect("same braiding")
    })
}

fn leibniz(rng: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    for _ in 0..20 {
        let [a, b, c, d] = [0; 4].map(|_| random_root(rng, &[3, 4, 5, 7, 8, 12]));
        let br = Arc::new(DiagonalBraiding::from_roots(a, b, c, d));
        let (la, lb) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let x = random_tensor(rng, &br, la);
        let y = random_tensor(rng, &br, lb);
        for i in [1u8, 2] {
            let lhs = derive(i, &(&x * &y));
            // ∂_i(xy) = ∂_i(x) y + χ(−e_i, deg x) x ∂_i(y)
            let alpha = if i == 1 { GroupDegree(-1, 0) } else { GroupDegree(0, -1) };
            let rhs = &(&derive(i, &x) * &y) + &(&group_act(alpha, &x) * &derive(i, &y));
            out.record(lhs == rhs, || format!("{br:?}, i = {i}"));
        }
    }
    out
}

fn known_dimensions(_: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    let one = RootOfUnity::one();
    let cases = [((2u32, 2u32), 4u64), ((3, 2), 6), ((3, 3), 9)];
    for ((n1, n2), total) in cases {
        let br = Arc::new(DiagonalBraiding::from_roots(RootOfUnity::new(1, n1), one, one, RootOfUnity::new(1, n2)));
        let rep = hilbert_report(&br, 6, 6, Precision::Exact);
        out.record(
            rep.map(|r| r.total_dimension() == total && !r.truncated).unwrap_or(false),
            || format!("orders ({n1}, {n2})"),
        );
    }
    out
}

fn closed_forms(rng: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    for _ in 0..6 {
        let [a, b, c, d] = [0; 4].map(|_| random_root(rng, &[5, 7, 8, 12, 24]));
        let br = Arc::new(DiagonalBraiding::from_roots(a, b, c, d));
        let coeff = Coefficients::exact(&br);
        let mut ctx = RootVectorContext::new(&br);
        for i in 1..=3usize {
            let (Ok(zi), Ok(zn), Ok(z1)) = (ctx.z(i), ctx.z(i + 1), ctx.z1(i)) else {
                continue;
            };
            let p = pair_element(&zi, &zi).as_scalar().unwrap_or_else(CyclotomicNumber::zero);
            out.record(p == coeff.pair_zz(i), || format!("<z^_{i}, z_{i}> on {br:?}"));
            let lhs = pair_element(&zi, &z1);
            let rhs = zn.scale(&coeff.z1_pairing(i));
            let diff = &lhs - &rhs;
            let ok = crate::tensor::is_zero_in_nichols(&diff).unwrap_or(false);
            out.record(ok, || format!("<z^_{i}, z_{i},1> on {br:?}"));
        }
    }
    out
}

fn worked_examples(_: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    let q = RootOfUnity::new(1, 26);
    let rep = evaluate_conditions(&DescentFamily::First.braiding(q), Limits::default());
    let first = rep.first_failure().map(|(c, a)| (c, a.witness.as_ref().and_then(|w| w.index)));
    out.record(first == Some((Condition::A5, Some(6))), || format!("order-26 first family: {first:?}"));
    let q = RootOfUnity::new(1, 15);
    let rep = evaluate_conditions(&DescentFamily::Second.braiding(q), Limits::default());
    let first = rep.first_failure().map(|(c, a)| (c, a.witness.as_ref().and_then(|w| w.index)));
    out.record(first == Some((Condition::A6, Some(2))), || format!("R_15 second family: {first:?}"));
    out
}

fn agreement(_: &mut ChaCha8Rng, config: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    let sweep = crate::jobs::pipeline_sweep(&JobConfig {
        pipeline_conductor: 24.min(config.pipeline_conductor),
        ..config.clone()
    });
    out.passed = sweep.orbits - sweep.disagreements.len() as u64;
    out.failed = sweep.disagreements.len() as u64 + sweep.galois_mismatches.len() as u64;
    out.first_failure = sweep
        .disagreements
        .first()
        .map(|d| format!("({}, {}, {})", d.q11, d.r, d.q22))
        .or_else(|| sweep.galois_mismatches.first().cloned());
    out
}

fn galois_invariance(rng: &mut ChaCha8Rng, config: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    for _ in 0..40 {
        let n = *[7u32, 9, 10, 12, 14, 15, 18, 20, 24].choose(rng).expect("nonempty");
        let e = [0; 3].map(|_| rng.gen_range(0..n as i64));
        let k = loop {
            let k = rng.gen_range(1..n as i64);
            if num_integer::gcd(k, n as i64) == 1 {
                break k;
            }
        };
        let run = |k: i64| {
            let [q, r, s] = e.map(|x| RootOfUnity::new(x * k, n));
            let br = DiagonalBraiding::from_roots(q, r, RootOfUnity::one(), s);
            (classify_pipeline(&br, config.limits()), classify_theorem_roots(q, r, s))
        };
        let (p1, t1) = run(1);
        let (pk, tk) = run(k);
        out.record(
            p1.outcome == pk.outcome && p1.labels == pk.labels && t1.labels == tk.labels,
            || format!("exponents {e:?} mod {n}, k = {k}"),
        );
    }
    out
}

fn descent(_: &mut ChaCha8Rng, _: &JobConfig) -> CheckResult {
    let mut out = CheckResult::default();
    let run = |f: DescentFamily, k: i64, n: u32| descent_chain(&f.braiding(RootOfUnity::new(k, n)), 64);
    let r = run(DescentFamily::First, 1, 11);
    out.record(
        matches!(r, Ok(ref o) if matches!(o.verdict, DescentVerdict::InfiniteChainCycle { period } if period <= 5)),
        || "R_11 first family".into(),
    );
    let r = run(DescentFamily::First, 1, 26);
    out.record(
        matches!(r, Ok(ref o) if matches!(o.verdict, DescentVerdict::Blocked(ref s) if s.step == 5)),
        || "order-26 first family".into(),
    );
    // R_7: z_2 = 0 and χ(u_2, u_2) = 1 stop the chain at step 2
    let r = run(DescentFamily::Second, 1, 7);
    out.record(
        matches!(r, Ok(ref o) if matches!(o.verdict, DescentVerdict::Blocked(ref s) if s.step == 2)),
        || "R_7 second family".into(),
    );
    let r = run(DescentFamily::Second, 1, 11);
    let next = DescentFamily::First.braiding(RootOfUnity::new(16, 11));
    out.record(
        matches!(r, Ok(ref o) if o.chain.first().map(|s| &s.step.target) == Some(&next)
            && matches!(o.verdict, DescentVerdict::InfiniteChainCycle { .. })),
        || "R_11 second family".into(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = run_verify(&JobConfig::default());
        for c in &report.checks {
            assert_eq!(c.failed, 0, "{}: {:?}", c.name, c.first_failure);
            assert!(c.passed > 0, "{} ran nothing", c.name);
        }
    }
}
