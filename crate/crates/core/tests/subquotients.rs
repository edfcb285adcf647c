//! Subquotient validation and descent chains on the two recognized families.

use std::sync::Arc;

use nichols::subquotients::step6_generators;
use nichols::{
    descent_chain, validate_subquotient, Coefficients, DescentFamily, DescentVerdict, RootOfUnity, RootVectorContext,
};

fn primitive(n: u32) -> impl Iterator<Item = RootOfUnity> {
    (1..n as i64)
        .filter(move |k| num_integer::gcd(*k, n as i64) == 1)
        .map(move |k| RootOfUnity::new(k, n))
}

/// λ_1, λ_2 ≠ 0 exactly when ⟨y_2, w_1⟩ ≠ 0, z_2 ≠ 0 and x_21 ≠ 0.
#[test]
fn pairings_track_the_step_six_hypotheses() {
    let mut both = [0usize; 2];
    for n in [7u32, 11, 22] {
        for q in primitive(n) {
            let br = Arc::new(DescentFamily::First.braiding(q));
            let co = Coefficients::exact(&br);
            let hyp = co.y2_w1().is_ok_and(|m| !m.is_zero())
                && !co.z_vanishing(2).is_zero()
                && !co.r().is_one();
            let ctx = RootVectorContext::new(&br);
            let gens = step6_generators(&br).expect("below the cap");
            let v = validate_subquotient(&ctx, &gens, 4).expect("homogeneous generators");
            assert!(v.off_diagonal_vanishes, "{q}");
            assert_eq!(v.lambdas.iter().all(|l| !l.is_zero()), hyp, "{q}");
            both[hyp as usize] += 1;
        }
    }
    assert!(both[1] > 0, "no sample satisfies the hypotheses");
}

#[test]
fn skew_primitive_to_degree_eight() {
    let br = Arc::new(DescentFamily::First.braiding(RootOfUnity::new(1, 11)));
    let ctx = RootVectorContext::new(&br);
    let gens = step6_generators(&br).expect("below the cap");
    let v = validate_subquotient(&ctx, &gens, 8).expect("homogeneous generators");
    assert!(v.passes(), "{v:?}");
    assert_eq!(v.verified_to_degree, 8);
}

#[test]
fn chains_compose_and_blocks_reverify() {
    for (family, n) in [(DescentFamily::First, 11u32), (DescentFamily::Second, 11), (DescentFamily::First, 26)] {
        for q in primitive(n) {
            let out = descent_chain(&family.braiding(q), 64).expect("recognized");
            for w in out.chain.windows(2) {
                assert_eq!(w[0].step.target, w[1].step.source, "{q}");
            }
            if let DescentVerdict::Blocked(s) = &out.verdict {
                assert!(s.identities.iter().all(|i| i.holds(&family.braiding(q))), "{q}: {s:?}");
            }
        }
    }
}

#[test]
fn second_family_precondition() {
    // q³ = −1 is excluded by the example's hypothesis
    let out = descent_chain(&DescentFamily::Second.braiding(RootOfUnity::new(1, 6)), 64).expect("recognized");
    assert!(matches!(out.verdict, DescentVerdict::Blocked(ref s) if s.step == 1));
}
