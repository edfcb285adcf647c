//! Fixed examples for the two classifiers and the condition checker.

use nichols::{
    classify_pipeline, classify_theorem, evaluate_conditions, CaseLabel, Condition, CyclotomicNumber, DescentFamily, DiagonalBraiding,
    Limits, Outcome, RootOfUnity, TwistClass,
};

fn root(k: i64, n: u32) -> RootOfUnity {
    RootOfUnity::new(k, n)
}

/// (q11, r, q22) with q21 = 1.
fn triple(q: RootOfUnity, r: RootOfUnity, s: RootOfUnity) -> DiagonalBraiding {
    DiagonalBraiding::from_roots(q, r, RootOfUnity::one(), s)
}

fn label(part: u8, item: u8) -> CaseLabel {
    CaseLabel::new(part, item).expect("listed item")
}

/// Both classifiers must agree on the canonical label.
fn assert_finite(br: DiagonalBraiding, expected: CaseLabel) {
    let theorem = classify_theorem(&br.twist_class());
    let pipeline = classify_pipeline(&br, Limits::default());
    assert_eq!(theorem.outcome, Outcome::Finite, "{br:?}: {theorem:?}");
    assert!(theorem.labels.contains(&expected), "{br:?}: {:?}", theorem.labels);
    assert!(theorem.agrees_with(&pipeline), "{br:?}: {theorem:?} vs {pipeline:?}");
}

#[test]
fn listed_examples() {
    let r8 = root(1, 8);
    assert_finite(triple(r8.pow(2), r8, r8.pow(-1)), label(2, 5));
    let r24 = root(5, 24);
    assert_finite(triple(r24.pow(6), r24, r24.pow(-1)), label(2, 6));
    let q = root(1, 5);
    assert_finite(triple(q, q.pow(-3), RootOfUnity::minus_one()), label(4, 2));
    let q = root(1, 18);
    assert_finite(triple(q, q.pow(-2), q.pow(3).neg()), label(5, 4));
    let q = root(7, 30);
    assert_finite(triple(q, q.pow(-3), q.pow(5).neg()), label(5, 5));
    // Cartan A2 and B2
    let q = root(1, 3);
    assert_finite(triple(q, q.pow(-1), q), label(2, 1));
    assert_finite(triple(q, q.pow(-1), q.pow(2)), label(2, 3));
    let q = root(1, 5);
    assert_finite(triple(q, q.pow(-2), q.pow(2)), label(2, 4));
    // r = 1: the tensor product of two rank-one algebras
    assert_finite(triple(root(1, 4), RootOfUnity::one(), root(2, 7)), label(1, 1));
}

#[test]
fn exchanged_ordering_is_found() {
    let r8 = root(3, 8);
    let br = triple(r8.pow(-1), r8, r8.pow(2));
    let v = classify_theorem(&br.twist_class());
    assert_eq!(v.outcome, Outcome::Finite);
    assert!(v.swapped);
    assert!(v.agrees_with(&classify_pipeline(&br, Limits::default())));
}

#[test]
fn outside_the_list() {
    for br in [
        DescentFamily::First.braiding(root(1, 11)),
        triple(root(1, 7), root(2, 7), root(3, 7)),
        triple(root(1, 12), root(5, 12), root(1, 9)),
    ] {
        let theorem = classify_theorem(&br.twist_class());
        assert_eq!(theorem.outcome, Outcome::NotInList, "{br:?}");
        assert!(theorem.agrees_with(&classify_pipeline(&br, Limits::default())), "{br:?}");
    }
}

#[test]
fn non_roots_are_not_listed() {
    let two = CyclotomicNumber::from_integer(2);
    let tc = TwistClass::new(two.clone(), CyclotomicNumber::one(), two);
    assert_eq!(classify_theorem(&tc).outcome, Outcome::NotInList);
}

#[test]
fn first_failures() {
    // (A1): q11 = 1 and z_i never vanishes from the x_1 side
    let rep = evaluate_conditions(&triple(RootOfUnity::one(), root(1, 5), RootOfUnity::one()), Limits::default());
    assert_eq!(rep.first_failure().map(|(c, _)| c), Some(Condition::A1));
    // order 26 in the first family stops at (A5) with i = 6
    let rep = evaluate_conditions(&DescentFamily::First.braiding(root(1, 26)), Limits::default());
    let (c, a) = rep.first_failure().expect("fails");
    assert_eq!(c, Condition::A5);
    assert_eq!(a.witness.as_ref().and_then(|w| w.index), Some(6));
}
