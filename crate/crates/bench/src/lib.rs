//! Fixed workloads shared by the benchmarks.

use nichols::{DescentFamily, DiagonalBraiding, RootOfUnity};

/// Named braidings covering the main pipeline branches.
pub fn fixtures() -> Vec<(&'static str, DiagonalBraiding)> {
    let r = RootOfUnity::new;
    let one = RootOfUnity::one();
    vec![
        ("cartan-a2-r5", DiagonalBraiding::from_roots(r(1, 5), r(-1, 5), one, r(1, 5))),
        ("item-2.5", DiagonalBraiding::from_roots(r(2, 8), r(1, 8), one, r(7, 8))),
        ("item-5.5", DiagonalBraiding::from_roots(r(1, 30), r(-3, 30), one, r(20, 30))),
        ("first-family-r11", DescentFamily::First.braiding(r(1, 11))),
        ("second-family-r15", DescentFamily::Second.braiding(r(1, 15))),
        ("generic-r24", DiagonalBraiding::from_roots(r(5, 24), r(7, 24), r(1, 24), r(11, 24))),
    ]
}

/// Exponent triples over μ_n for the literal-list scan.
pub fn scan_triples(n: u32) -> impl Iterator<Item = [RootOfUnity; 3]> {
    let e = move |k: u32| RootOfUnity::new(k as i64, n);
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [e(a), e(b), e(c)])))
}
