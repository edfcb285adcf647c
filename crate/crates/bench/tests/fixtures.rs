use nichols::{classify_pipeline, classify_theorem, Limits, Outcome};
use nichols_bench::{fixtures, scan_triples};

#[test]
fn fixtures_classify_as_named() {
    for (name, br) in fixtures() {
        let theorem = classify_theorem(&br.twist_class());
        assert!(theorem.agrees_with(&classify_pipeline(&br, Limits::default())), "{name}");
        let listed = name.starts_with("item") || name.starts_with("cartan");
        assert_eq!(theorem.outcome == Outcome::Finite, listed, "{name}: {theorem:?}");
    }
}

#[test]
fn scan_covers_the_cube() {
    assert_eq!(scan_triples(5).count(), 125);
}
