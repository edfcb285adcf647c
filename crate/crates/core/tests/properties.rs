//! Property tests for the algebraic invariants.

use std::sync::Arc;

use nichols::tensor::{derive, group_act, hilbert_report};
use nichols::{
    classify_pipeline, classify_theorem, q_binom, q_fact, CyclotomicNumber, DiagonalBraiding, GroupDegree, JobConfig,
    Precision, RootOfUnity, TensorElement, TwistClass, Word,
};
use proptest::prelude::*;

const ORDERS: [u32; 9] = [2, 3, 4, 5, 6, 8, 9, 10, 12];

fn root() -> impl Strategy<Value = RootOfUnity> {
    (prop::sample::select(&ORDERS[..]), 0i64..120).prop_map(|(n, k)| RootOfUnity::new(k, n))
}

fn braiding() -> impl Strategy<Value = Arc<DiagonalBraiding>> {
    [root(), root(), root(), root()].prop_map(|[a, b, c, d]| Arc::new(DiagonalBraiding::from_roots(a, b, c, d)))
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=2, 0..=max).prop_map(|w| Word::new(w).expect("letters 1 and 2"))
}

fn cyclo() -> impl Strategy<Value = CyclotomicNumber> {
    (prop::collection::vec((0i64..12, -3i64..=3), 1..4)).prop_map(|terms| {
        terms.into_iter().fold(CyclotomicNumber::zero(), |acc, (k, c)| {
            acc + CyclotomicNumber::root(k, 12) * CyclotomicNumber::from_integer(c)
        })
    })
}

/// Sum of monomials over shuffles of one word, so the element is homogeneous.
fn homogeneous(br: &Arc<DiagonalBraiding>, w: &Word, rot: usize) -> TensorElement {
    let letters = w.letters();
    let mut out = TensorElement::monomial(br, w.clone(), CyclotomicNumber::one());
    if !letters.is_empty() {
        let mut r = letters.to_vec();
        r.rotate_left(rot % letters.len());
        let m = TensorElement::monomial(br, Word::new(r).expect("letters"), CyclotomicNumber::from_integer(2));
        out = &out + &m;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_distributes(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn pascal_rule(n in prop::sample::select(&ORDERS[..]), k in 1i64..12, i in 1usize..9, j in 1usize..9) {
        prop_assume!(j < i);
        let p = CyclotomicNumber::root(k, n);
        // (i choose j)_p = (i-1 choose j-1)_p + p^j (i-1 choose j)_p, whenever all three are defined
        if let (Ok(a), Ok(b), Ok(c)) = (q_binom(i, j, &p), q_binom(i - 1, j - 1, &p), q_binom(i - 1, j, &p)) {
            prop_assert_eq!(a, &b + &(&p.pow(j as i64) * &c));
        }
        prop_assert_eq!(q_fact(i, &p), &q_fact(i - 1, &p) * &nichols::q_int(i, &p));
    }

    #[test]
    fn leibniz(br in braiding(), u in word(4), v in word(4), ru in 0usize..4, rv in 0usize..4) {
        let x = homogeneous(&br, &u, ru);
        let y = homogeneous(&br, &v, rv);
        for i in [1u8, 2] {
            let alpha = if i == 1 { GroupDegree(-1, 0) } else { GroupDegree(0, -1) };
            let rhs = &(&derive(i, &x) * &y) + &(&group_act(alpha, &x) * &derive(i, &y));
            prop_assert_eq!(derive(i, &(&x * &y)), rhs);
        }
    }

    #[test]
    fn exchange_invariance(q in root(), r in root(), s in root()) {
        let tc = TwistClass::from_roots(q, r, s);
        let a = classify_theorem(&tc);
        let b = classify_theorem(&tc.swapped());
        prop_assert_eq!(a.outcome, b.outcome);
        prop_assert_eq!(a.labels, b.labels);
    }

    #[test]
    fn modular_dimensions_match_exact(br in braiding()) {
        let e = hilbert_report(&br, 5, 5, Precision::Exact).unwrap();
        let m = hilbert_report(&br, 5, 5, Precision::Modular).unwrap();
        prop_assert_eq!(e.by_multidegree, m.by_multidegree);
    }

    #[test]
    fn dimensions_depend_on_the_twist_class(q in root(), a in root(), b in root(), s in root()) {
        // (q, a b, 1, s) and (q, a, b, s) share q12 q21
        let one = RootOfUnity::one();
        let x = Arc::new(DiagonalBraiding::from_roots(q, a.mul(b), one, s));
        let y = Arc::new(DiagonalBraiding::from_roots(q, a, b, s));
        let dx = hilbert_report(&x, 5, 5, Precision::Modular).unwrap();
        let dy = hilbert_report(&y, 5, 5, Precision::Modular).unwrap();
        prop_assert_eq!(dx.by_multidegree, dy.by_multidegree);
    }

    #[test]
    fn pipeline_is_galois_invariant(
        n in prop::sample::select(vec![7u32, 9, 10, 12, 14, 15, 18, 20, 24]),
        e in [0i64..24, 0i64..24, 0i64..24],
        k in 1i64..24,
    ) {
        prop_assume!(num_integer::gcd(k, n as i64) == 1);
        let limits = JobConfig::default().limits();
        let run = |k: i64| {
            let [q, r, s] = e.map(|x| RootOfUnity::new(x * k, n));
            classify_pipeline(&DiagonalBraiding::from_roots(q, r, RootOfUnity::one(), s), limits)
        };
        let (a, b) = (run(1), run(k));
        prop_assert_eq!(a.outcome, b.outcome);
        prop_assert_eq!(a.labels, b.labels);
    }
}
