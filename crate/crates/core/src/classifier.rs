//! Two deciders for membership in the rank-two classification list.
//!
//! [`classify_theorem`] transcribes the itemized list literally and tests a
//! twist class in both orderings. [`classify_pipeline`] instead runs the
//! conditions (A1)–(A8), computes a, sorts the braiding into the six families
//! and walks the per-family case analysis, using the scalar criteria for
//! z_{i,1}, z_{i,2}, s_i and t_i. The two share only field arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::braiding::{DiagonalBraiding, TwistClass};
use crate::conditions::{evaluate_conditions, Limits, Triple};
use crate::cyclo::RootOfUnity;
use crate::qcomb::q_int;
use crate::root_vectors::{deg_z1, ScalarOracle};
use crate::scalar::Scalar;
use crate::scalar_is_zero;

/// An itemized case `part.item`; part 1 has the single item 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseLabel {
    pub part: u8,
    pub item: u8,
}

const ITEMS_PER_PART: [u8; 5] = [1, 7, 7, 8, 5];

impl CaseLabel {
    pub fn new(part: u8, item: u8) -> Option<Self> {
        let n = *ITEMS_PER_PART.get(part.checked_sub(1)? as usize)?;
        (1..=n).contains(&item).then_some(CaseLabel { part, item })
    }

    /// All 28 labels in lexicographic order.
    pub fn all() -> impl Iterator<Item = CaseLabel> {
        (1..=5u8).flat_map(|p| (1..=ITEMS_PER_PART[p as usize - 1]).map(move |i| CaseLabel { part: p, item: i }))
    }

    /// Whether the item's defining conditions hold for (q11, r, q22) in this ordering.
    pub fn holds(self, tc: &TwistClass) -> bool {
        tc.roots()
            .map(|[q, r, s]| item_holds(self, Triple { q, r, s }))
            .unwrap_or(false)
    }
}

const fn l(part: u8, item: u8) -> CaseLabel {
    CaseLabel { part, item }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.part == 1 {
            write!(f, "1")
        } else {
            write!(f, "{}.{}", self.part, self.item)
        }
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.part, self.item].serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Finite,
    NotInList,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub labels: BTreeSet<CaseLabel>,
    pub swapped: bool,
    pub evidence: Vec<String>,
}

impl Verdict {
    fn not_in_list(evidence: Vec<String>) -> Self {
        Verdict {
            outcome: Outcome::NotInList,
            labels: BTreeSet::new(),
            swapped: false,
            evidence,
        }
    }

    /// The lexicographically least label.
    pub fn canonical_label(&self) -> Option<CaseLabel> {
        self.labels.first().copied()
    }

    /// Same outcome and same canonical label.
    pub fn agrees_with(&self, other: &Verdict) -> bool {
        self.outcome == other.outcome && self.canonical_label() == other.canonical_label()
    }
}

// ---------------------------------------------------------------------------
// The literal list

fn ord(x: RootOfUnity) -> u32 {
    x.order()
}

fn m1() -> RootOfUnity {
    RootOfUnity::minus_one()
}

fn item_holds(label: CaseLabel, t: Triple) -> bool {
    let Triple { q, r, s } = t;
    let one = |x: RootOfUnity| x.is_one();
    let part2 = !one(r) && one(r.mul(s));
    let common = !one(r) && !one(q.mul(r)) && !one(r.mul(s));
    let part3 = common && s == m1() && matches!(ord(q), 2 | 3);
    let part4 = common && s == m1() && !matches!(ord(q), 2 | 3);
    let part5 = common && q != m1() && ord(s) == 3;
    let q0 = q.mul(r);
    match (label.part, label.item) {
        (1, 1) => one(r) && ord(q) >= 2 && ord(s) >= 2,
        (2, 1) => part2 && one(q.mul(r)) && ord(r) >= 2,
        (2, 2) => part2 && q == m1() && ord(r) >= 3,
        (2, 3) => part2 && ord(q) == 3 && ord(r) >= 2 && !one(q.mul(r)),
        (2, 4) => part2 && ord(q) >= 4 && (r == q.pow(-2) || r == q.pow(-3)),
        (2, 5) => part2 && ord(r) == 8 && q == r.pow(2),
        (2, 6) => part2 && ord(r) == 24 && q == r.pow(6),
        (2, 7) => part2 && ord(r) == 30 && q == r.pow(12),
        (3, 1) => part3 && q == m1() && ord(r) >= 3,
        (3, 2) => part3 && ord(q) == 3 && (r == q || r == q.neg()),
        (3, 3) => part3 && ord(q0) == 12 && q == q0.pow(4),
        (3, 4) => part3 && ord(r) == 12 && q == r.pow(2).neg(),
        (3, 5) => part3 && ord(r) == 9 && q == r.pow(-3),
        (3, 6) => part3 && ord(r) == 24 && q == r.pow(4).neg(),
        (3, 7) => part3 && ord(r) == 30 && q == r.pow(5).neg(),
        (4, 1) => part4 && ord(q) >= 5 && r == q.pow(-2),
        (4, 2) => part4 && matches!(ord(q), 5 | 8 | 12 | 14 | 20) && r == q.pow(-3),
        (4, 3) => part4 && matches!(ord(q), 10 | 18) && r == q.pow(-4),
        (4, 4) => part4 && matches!(ord(q), 14 | 24) && r == q.pow(-5),
        (4, 5) => part4 && ord(r) == 8 && q == r.pow(-2),
        (4, 6) => part4 && ord(r) == 12 && q == r.pow(-3),
        (4, 7) => part4 && ord(r) == 20 && q == r.pow(-4),
        (4, 8) => part4 && ord(r) == 30 && q == r.pow(-6),
        (5, 1) => part5 && ord(q0) == 12 && q == q0.pow(4) && s == q0.pow(2).neg(),
        (5, 2) => part5 && ord(r) == 12 && q == r.pow(2).neg() && s == q,
        (5, 3) => part5 && ord(r) == 24 && q == r.pow(-6) && s == r.pow(-8),
        (5, 4) => part5 && ord(q) == 18 && r == q.pow(-2) && s == q.pow(3).neg(),
        (5, 5) => part5 && ord(q) == 30 && r == q.pow(-3) && s == q.pow(5).neg(),
        _ => false,
    }
}

fn matching_items(t: Triple) -> BTreeSet<CaseLabel> {
    // Every item needs r = 1, r s = 1, s = -1 or ord(s) = 3.
    let Triple { r, s, .. } = t;
    if !r.is_one() && !r.mul(s).is_one() && s != m1() && ord(s) != 3 {
        return BTreeSet::new();
    }
    CaseLabel::all().filter(|c| item_holds(*c, t)).collect()
}

/// Items holding for (q11, r, q22) in this ordering only.
pub fn items_holding(q: RootOfUnity, r: RootOfUnity, s: RootOfUnity) -> BTreeSet<CaseLabel> {
    matching_items(Triple { q, r, s })
}

/// Tests (q11, r, q22) and (q22, r, q11) against every item of the list.
pub fn classify_theorem(tc: &TwistClass) -> Verdict {
    let Some([q, r, s]) = tc.roots() else {
        return Verdict::not_in_list(vec![format!(
            "{tc}: an entry is not a root of unity, and every item forces roots of unity"
        )]);
    };
    classify_theorem_roots(q, r, s)
}

/// [`classify_theorem`] on exponent data.
pub fn classify_theorem_roots(q: RootOfUnity, r: RootOfUnity, s: RootOfUnity) -> Verdict {
    let t = Triple { q, r, s };
    let direct = matching_items(t);
    let swapped = matching_items(t.swapped());
    let mut evidence = Vec::new();
    for (name, set) in [("(q11, r, q22)", &direct), ("(q22, r, q11)", &swapped)] {
        if !set.is_empty() {
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            evidence.push(format!("{name} satisfies {}", items.join(", ")));
        }
    }
    if direct.is_empty() && swapped.is_empty() {
        evidence.push("no item holds in either ordering".into());
        return Verdict::not_in_list(evidence);
    }
    Verdict {
        outcome: Outcome::Finite,
        swapped: direct.is_empty(),
        labels: direct.union(&swapped).copied().collect(),
        evidence,
    }
}

// ---------------------------------------------------------------------------
// The six families

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SixFamily {
    pub family: u8,
    pub a: usize,
}

impl SixFamily {
    /// The defining relations, for reports.
    pub fn relations(&self) -> &'static str {
        match self.family {
            1 => "q22 = q11^(a+1), q12q21 = q11^(-a-1)",
            2 => "q22 = -1, q12q21 = q11^(-a-1)",
            3 => "q22 = -q11^(2a+1), q12q21 = q11^(-a-1)",
            4 => "q11^(a+2) = 1, q22 = q11^-3 (q12q21)^-a",
            5 => "q11^(a+2) = 1, q22 = -q11^-6 (q12q21)^(1-a)",
            _ => "q11^(a+2) = 1, q22 = -q11^-1 (q12q21)^(-a-1)",
        }
    }
}

fn family_holds(f: u8, t: Triple, a: usize) -> bool {
    let Triple { q, r, s } = t;
    let a = a as i64;
    let cartan_r = r == q.pow(-a - 1);
    let root = q.pow(a + 2).is_one();
    match f {
        1 => cartan_r && s == q.pow(a + 1),
        2 => cartan_r && s == m1(),
        3 => cartan_r && s == q.pow(2 * a + 1).neg(),
        4 => root && s == q.pow(-3).mul(r.pow(-a)),
        5 => root && s == q.pow(-6).mul(r.pow(1 - a)).neg(),
        6 => root && s == q.pow(-1).mul(r.pow(-a - 1)).neg(),
        _ => false,
    }
}

/// The families among the six that the twist class satisfies for this a.
pub fn six_families(tc: &TwistClass, a: usize) -> Vec<SixFamily> {
    match tc.roots() {
        Some([q, r, s]) => families_of(Triple { q, r, s }, a),
        None => Vec::new(),
    }
}

fn families_of(t: Triple, a: usize) -> Vec<SixFamily> {
    (1..=6)
        .filter(|f| family_holds(*f, t, a))
        .map(|family| SixFamily { family, a })
        .collect()
}

// ---------------------------------------------------------------------------
// The pipeline

/// Result of one branch of the case analysis.
#[derive(Debug, Clone)]
enum Step {
    Finite(CaseLabel, String),
    Infinite(String),
    /// Settled by another family or by the other ordering.
    Covered(String),
    /// No sanctioned conclusion: a bug signal.
    Open(String),
}

use Step::*;

struct Branch {
    t: Triple,
    oracle: ScalarOracle,
}

impl Branch {
    fn d0_zero(&self, i: usize) -> bool {
        scalar_is_zero!(self.oracle, |c| Ok(c.d0(i))).expect("no denominator")
    }

    /// z_{i,1} = 0 iff d_{i,0} z_{i+1} = 0.
    fn z1_zero(&self, i: usize) -> bool {
        self.t.z_zero(i + 1) || self.d0_zero(i)
    }

    /// z_{i,2} = 0 iff d_{i,0} d_{i,1} (2)_{p_{i+1}} z_{i+1} = 0.
    fn z2_zero(&self, i: usize) -> bool {
        self.t.z_zero(i + 1)
            || scalar_is_zero!(self.oracle, |c| Ok(c.d0(i).mul(&c.d1(i)).mul(&q_int(2, &c.p(i + 1)))))
                .expect("no denominator")
    }

    fn chi_z1z1(&self, i: usize) -> RootOfUnity {
        self.t.chi_self(deg_z1(i))
    }

    /// The t_i criterion where z_{i,2} ≠ 0: infinite when χ(z_{i,1},z_{i,1}) = −1
    /// or ⟨ẑ_i, t_i⟩ ≠ 0; `None` when t_i passes.
    fn t_obstruction(&self, i: usize) -> Option<Step> {
        if self.chi_z1z1(i) == m1() {
            return Some(Infinite(format!("chi(z_{i},1, z_{i},1) = -1 with z_{i},2 != 0")));
        }
        match scalar_is_zero!(self.oracle, |c| c.t_pairing(i)) {
            Ok(true) => None,
            Ok(false) => Some(Infinite(format!("<z^_{i}, t_{i}> != 0 with z_{i},2 != 0"))),
            Err(d) => Some(Open(format!("t_{i} pairing degenerate: {}", d.0))),
        }
    }
}

fn finite(part: u8, item: u8, why: impl Into<String>) -> Step {
    Finite(l(part, item), why.into())
}

fn cited(why: impl fmt::Display) -> Step {
    Infinite(format!("cited contradiction, not re-derived: {why}"))
}

/// z_2 = 0: decided by the (A1), (A2) data.
fn branch_z2_zero(t: Triple) -> Step {
    let Triple { q, r, s } = t;
    if r.is_one() {
        return finite(1, 1, "q12q21 = 1");
    }
    let qr = q.mul(r).is_one();
    let rs = r.mul(s).is_one();
    match (qr, q == m1(), rs, s == m1()) {
        (true, _, true, _) => finite(2, 1, "q11 r = 1, r q22 = 1"),
        (false, true, true, _) => finite(2, 2, "q11 = -1, r q22 = 1"),
        (true, _, false, true) => Covered("q11 r = 1, q22 = -1: exchange x1 and x2".into()),
        (false, true, false, true) => finite(3, 1, "q11 = q22 = -1"),
        _ => Open("z_2 = u_2 = 0 without a matching case".into()),
    }
}

fn family1(b: &Branch, a: usize) -> Step {
    let q = b.t.q;
    match a {
        1 if ord(q) == 3 => finite(2, 3, "Cartan type, a = 1, q11 in R_3"),
        1 | 2 => finite(2, 4, format!("Cartan type, a = {a} (finite by the Cartan classification)")),
        3 if b.t.chi_zz(2).is_one() => Infinite("Cartan a = 3: chi(z_2, z_2) = 1 contradicts (A5)".into()),
        3 => Open("Cartan a = 3 with chi(z_2, z_2) != 1".into()),
        _ => Infinite(format!("Cartan type with a = {a} >= 4 is infinite (cited)")),
    }
}

fn family2(b: &Branch, a: usize) -> Step {
    let q = b.t.q;
    match a {
        1 => match ord(q) {
            4 => finite(2, 4, "family 2, a = 1, q11 in R_4"),
            3 => finite(3, 2, "family 2, a = 1, q11 in R_3"),
            _ => finite(4, 1, "family 2, a = 1"),
        },
        2 => {
            if b.z2_zero(1) {
                if ord(q) == 6 {
                    Covered("family 2, a = 2, q11 in R_6 is Cartan".into())
                } else {
                    finite(4, 2, "family 2, a = 2, z_1,2 = 0")
                }
            } else {
                b.t_obstruction(1)
                    .unwrap_or_else(|| finite(4, 2, "family 2, a = 2, <z^_1, t_1> = 0"))
            }
        }
        3 => finite(4, 3, "family 2, a = 3, <z^_1, w_2> = 0"),
        4 => finite(4, 4, "family 2, a = 4, <z^_1, w_2> = 0"),
        _ => cited("family 2 with a >= 5: <z^_2, w_3> != 0 against (A7)"),
    }
}

fn family3(b: &Branch, a: usize) -> Step {
    let t = b.t;
    if t.u_zero(2) {
        return Covered("family 3 with u_2 = 0 lies in family 1 or 2".into());
    }
    match a {
        1 => {
            if t.chi_zz(1).is_one() {
                Infinite("family 3, a = 1: chi(z_1, z_1) = 1 contradicts (A5)".into())
            } else if ord(t.q) == 18 {
                finite(5, 4, "family 3, a = 1, u_3 = 0, q11 in R_18")
            } else {
                Open("family 3, a = 1, u_3 = 0 without a matching case".into())
            }
        }
        2 => {
            if b.z2_zero(1) {
                finite(5, 5, "family 3, a = 2, z_1,2 = 0")
            } else if let Some(step) = b.t_obstruction(1) {
                step
            } else if t.q.pow(5).is_one() {
                Covered("family 3, a = 2, q11^5 = 1 lies in family 2".into())
            } else {
                cited("family 3, a = 2: <z^_1, t_1> = 0 and u_4 = 0 are incompatible")
            }
        }
        _ => cited("family 3 with a >= 3: w_2 = 0 against (A8)"),
    }
}

fn family4(b: &Branch, a: usize) -> Step {
    let Triple { q, r, s } = b.t;
    if r.pow(a as i64 + 2).is_one() {
        return Covered("families 4-6 with r^(a+2) = 1 lie in families 1-3".into());
    }
    match a {
        1 => finite(2, 3, "family 4, a = 1"),
        2 => {
            let t = b.t;
            if t.u_zero(2) {
                if s == m1() {
                    finite(4, 5, "family 4, a = 2, q22 = -1")
                } else {
                    cited("family 4, a = 2, r q22 = 1 forces r^4 = 1")
                }
            } else if t.u_zero(3) {
                if ord(r) == 24 && q == r.pow(-6) && s == r.pow(-8) {
                    finite(5, 3, "family 4, a = 2, u_3 = 0, r in R_24")
                } else if ord(s) == 12 && q == s.pow(-3) && r == s.pow(-2) {
                    Infinite("family 4, a = 2: d_1,0 != 0 with p_1^3 = 1 contradicts (A6)".into())
                } else {
                    Open("family 4, a = 2, u_3 = 0 without a matching case".into())
                }
            } else if t.u_zero(4) {
                if s.pow(10) == m1() && r == s.pow(-3) && q == s.pow(-5) {
                    Covered("family 4, a = 2, u_4 = 0: exchange x1 and x2 (family 3)".into())
                } else {
                    cited("family 4, a = 2, u_4 = 0 forces r^4 = 1")
                }
            } else {
                Open("family 4, a = 2 with u_4 != 0 violates (A3)".into())
            }
        }
        3 if ord(r) == 30 && q == r.pow(-6) => finite(4, 8, "family 4, a = 3, r in R_30"),
        _ => cited(format!("family 4 with a = {a}: <z^_(a-2), w_(a-1)> = 0 has no admissible solution")),
    }
}

fn family5(b: &Branch, a: usize) -> Step {
    let t = b.t;
    let Triple { q, r, .. } = t;
    if r.pow(a as i64 + 2).is_one() {
        return Covered("families 4-6 with r^(a+2) = 1 lie in families 1-3".into());
    }
    match a {
        1 => {
            if b.d0_zero(1) {
                if r == m1() {
                    Covered("family 5, a = 1, r = -1 lies in family 4".into())
                } else if r.pow(2) == q.pow(2) {
                    finite(3, 2, "family 5, a = 1, d_1,0 = 0")
                } else {
                    Open("family 5, a = 1, d_1,0 = 0 without a matching case".into())
                }
            } else if b.z2_zero(1) {
                if r.pow(2) == m1() {
                    finite(3, 3, "family 5, a = 1, d_1,1 = 0, r^2 = -1")
                } else if r.pow(2) == q.neg() {
                    finite(3, 4, "family 5, a = 1, d_1,1 = 0, r^2 = -q11")
                } else if q == r.pow(-3) {
                    finite(3, 5, "family 5, a = 1, d_1,1 = 0, q11 = r^-3")
                } else {
                    Open("family 5, a = 1, z_1,2 = 0 without a matching case".into())
                }
            } else if let Some(step) = b.t_obstruction(1) {
                step
            } else if ord(r.pow(4).neg()) == 3 && q == r.pow(4).neg() {
                finite(3, 6, "family 5, a = 1, <z^_1, t_1> = 0, q11 = -r^4")
            } else if ord(r) == 30 && q == r.pow(5).neg() {
                finite(3, 7, "family 5, a = 1, <z^_1, t_1> = 0, r in R_30")
            } else {
                Open("family 5, a = 1, <z^_1, t_1> = 0 without a matching case".into())
            }
        }
        2 => {
            let minus_p2 = t.chi_zz(2).inv().neg();
            if ord(minus_p2) == 3 {
                if b.z2_zero(2) {
                    Open("family 5, a = 2, (3)_{-p_2} = 0 with z_2,2 = 0".into())
                } else {
                    b.t_obstruction(2).unwrap_or_else(|| {
                        Open("family 5, a = 2, (3)_{-p_2} = 0 with <z^_2, t_2> = 0".into())
                    })
                }
            } else {
                let s_zero = b.z1_zero(2)
                    || match scalar_is_zero!(b.oracle, |c| c.s_pairing(2)) {
                        Ok(z) => z,
                        Err(d) => return Open(format!("s_2 pairing degenerate: {}", d.0)),
                    };
                if !s_zero {
                    Infinite("family 5, a = 2: <z^_2,1 z^_1, s_2> != 0 and (3)_{-p_2} != 0".into())
                } else if b.d0_zero(2) {
                    if r.pow(4) == m1() && q == r.pow(2) {
                        finite(2, 5, "family 5, a = 2, d_2,0 = 0")
                    } else {
                        Open("family 5, a = 2, d_2,0 = 0 without a matching case".into())
                    }
                } else if ord(q.inv().mul(r.pow(-2))) == 3 {
                    if ord(r) == 24 && q == r.pow(6) {
                        finite(2, 6, "family 5, a = 2, (3)_{q11^-1 r^-2} = 0")
                    } else {
                        Open("family 5, a = 2, (3)_{q11^-1 r^-2} = 0 without a matching case".into())
                    }
                } else {
                    Open("family 5, a = 2, s_2 = 0 without a matching case".into())
                }
            }
        }
        _ => cited("family 5 with a >= 3: <z^_(a-2), w_(a-1)> != 0 against (A7)"),
    }
}

fn family6(b: &Branch, a: usize) -> Step {
    let t = b.t;
    let Triple { q, r, s } = t;
    if r.pow(a as i64 + 2).is_one() {
        return Covered("families 4-6 with r^(a+2) = 1 lie in families 1-3".into());
    }
    match a {
        1 => {
            if t.u_zero(2) {
                Covered("family 6, a = 1, u_2 = 0 lies in family 4 or 5".into())
            } else if !t.u_zero(3) {
                Open("family 6, a = 1 with u_3 != 0 violates (A3)".into())
            } else if r.mul(s.pow(2)).is_one() {
                Covered("family 6, a = 1, r q22^2 = 1: exchange x1 and x2 (family 3)".into())
            } else if ord(s) == 3 && q == s.inv() {
                finite(5, 1, "family 6, a = 1, (3)_{q22} = 0, q11 = q22^-1")
            } else if ord(s) == 3 && q == s {
                finite(5, 2, "family 6, a = 1, (3)_{q22} = 0, q11 = q22")
            } else {
                Open("family 6, a = 1, u_3 = 0 without a matching case".into())
            }
        }
        2 => {
            if q.mul(r.pow(2)) == m1() {
                Covered("family 6, a = 2, q11 r^2 = -1 lies in family 5".into())
            } else if q == r.pow(3).neg() {
                finite(4, 6, "family 6, a = 2, q11 = -r^3")
            } else {
                cited("family 6, a = 2: w_1 = 0 has no further solution")
            }
        }
        3 if ord(r) == 30 && q == r.pow(-3).neg() && s == r.inv() => {
            finite(2, 7, "family 6, a = 3, r in R_30")
        }
        3 if ord(r) == 20 && q == r.pow(-4) && s == m1() => finite(4, 7, "family 6, a = 3, r in R_20"),
        _ => cited(format!(
            "family 6 with a = {a}: the elementary chain from w_1 = w_2 = 0 (including the a = 10 and a = 13 subcases)"
        )),
    }
}

fn analyse_ordering(t: Triple, br: &DiagonalBraiding) -> Vec<Step> {
    if t.z_zero(2) {
        return vec![branch_z2_zero(t)];
    }
    let a = t.a().expect("z_2 != 0");
    let families = families_of(t, a);
    if families.is_empty() {
        return vec![Open(format!("a = {a}: w_a = 0 but none of the six families holds"))];
    }
    let b = Branch {
        t,
        oracle: ScalarOracle::new(br),
    };
    families
        .iter()
        .map(|f| {
            let step = match f.family {
                1 => family1(&b, a),
                2 => family2(&b, a),
                3 => family3(&b, a),
                4 => family4(&b, a),
                5 => family5(&b, a),
                _ => family6(&b, a),
            };
            tag(step, &format!("family {} (a = {a})", f.family))
        })
        .collect()
}

fn tag(step: Step, prefix: &str) -> Step {
    match step {
        Finite(c, s) => Finite(c, format!("{prefix}: {s}")),
        Infinite(s) => Infinite(format!("{prefix}: {s}")),
        Covered(s) => Covered(format!("{prefix}: {s}")),
        Open(s) => Open(format!("{prefix}: {s}")),
    }
}

/// Runs the conditions, then the case analysis in the (A3) ordering, and in
/// the exchanged ordering too when (A3) does not prefer either.
pub fn classify_pipeline(br: &DiagonalBraiding, limits: Limits) -> Verdict {
    let report = evaluate_conditions(br, limits);
    if let Some((c, v)) = report.first_failure() {
        let w = v.witness.as_ref().map(|w| {
            let at = w.index.map(|i| format!(" at i = {i}")).unwrap_or_default();
            format!("{}{at} = {} ({:?} ordering)", w.quantity, w.value, w.ordering)
        });
        return Verdict::not_in_list(vec![format!("{c:?} fails: {}", w.unwrap_or_default())]);
    }
    let normalized = report.normalized.clone().expect("(A3) ran");
    let t = Triple::of(&normalized).expect("roots of unity after (A2)");
    let mut orderings = vec![(t, normalized.clone(), report.swapped)];
    if t.u_min() == t.z_min() {
        let other = normalized.swap_basis();
        let rep = evaluate_conditions(&other, limits);
        if let Some((c, _)) = rep.first_failure() {
            return Verdict::not_in_list(vec![format!(
                "{c:?} fails in the exchanged ordering, which also satisfies (A3)"
            )]);
        }
        orderings.push((t.swapped(), other, !report.swapped));
    }

    let mut labels = BTreeSet::new();
    let mut swapped = None;
    let mut evidence = Vec::new();
    let mut infinite = false;
    for (t, br, flag) in &orderings {
        let side = if *flag { "exchanged" } else { "input" };
        for step in analyse_ordering(*t, br) {
            match step {
                Finite(c, why) => {
                    labels.insert(c);
                    swapped.get_or_insert(*flag);
                    evidence.push(format!("{side} ordering, {why} -> {c}"));
                }
                Infinite(why) => {
                    infinite = true;
                    evidence.push(format!("{side} ordering, {why} -> infinite"));
                }
                Covered(why) => evidence.push(format!("{side} ordering, {why}")),
                Open(why) => evidence.push(format!("{side} ordering, unresolved: {why}")),
            }
        }
    }
    let outcome = if infinite {
        if !labels.is_empty() {
            evidence.push("conflict: a branch reached a listed case while another proved infinity".into());
        }
        labels.clear();
        Outcome::NotInList
    } else if labels.is_empty() {
        Outcome::Indeterminate
    } else {
        Outcome::Finite
    };
    Verdict {
        outcome,
        swapped: outcome == Outcome::Finite && swapped.unwrap_or(false),
        labels,
        evidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CyclotomicNumber;

    fn rt(k: i64, n: u32) -> RootOfUnity {
        RootOfUnity::new(k, n)
    }

    fn tc(q: RootOfUnity, r: RootOfUnity, s: RootOfUnity) -> TwistClass {
        TwistClass::from_roots(q, r, s)
    }

    fn pipeline(q: RootOfUnity, r: RootOfUnity, s: RootOfUnity) -> Verdict {
        classify_pipeline(&DiagonalBraiding::from_roots(q, r, RootOfUnity::one(), s), Limits::default())
    }

    #[test]
    fn labels_are_the_itemized_ones() {
        assert_eq!(CaseLabel::all().count(), 28);
        assert!(CaseLabel::new(4, 8).is_some());
        assert!(CaseLabel::new(5, 6).is_none());
        assert!(CaseLabel::new(1, 2).is_none());
    }

    #[test]
    fn literal_examples() {
        let v = classify_theorem(&tc(rt(1, 3), RootOfUnity::one(), m1()));
        assert_eq!(v.labels.iter().copied().collect::<Vec<_>>(), vec![l(1, 1)]);
        let v = classify_theorem(&tc(rt(2, 8), rt(1, 8), rt(7, 8)));
        assert_eq!(v.canonical_label(), Some(l(2, 5)));
        let v = classify_theorem(&tc(rt(1, 5), rt(1, 5), m1()));
        assert_eq!(v.outcome, Outcome::NotInList);
        let two = CyclotomicNumber::from_integer(2);
        let v = classify_theorem(&TwistClass::new(two.clone(), two.clone(), two));
        assert_eq!(v.outcome, Outcome::NotInList);
    }

    #[test]
    fn pipeline_examples() {
        // Cartan a = 3 in R_7
        let q = rt(1, 7);
        let v = pipeline(q, q.pow(-4), q.pow(4));
        assert_eq!(v.outcome, Outcome::NotInList, "{v:?}");
        // family 2, a = 1, q11 in R_4
        let q = rt(1, 4);
        let v = pipeline(q, q.pow(-2), m1());
        assert_eq!(v.canonical_label(), Some(l(2, 4)), "{v:?}");
        // family 6, a = 2: 4.6
        let r = rt(1, 12);
        let v = pipeline(r.pow(-3), r, m1());
        assert!(v.labels.contains(&l(4, 6)), "{v:?}");
    }

    #[test]
    fn spot_anchors() {
        let q = rt(1, 3);
        let r = rt(1, 5);
        let v = classify_theorem(&tc(q, r, r.inv()));
        assert!(v.labels.contains(&l(2, 3)));
        let q = rt(1, 18);
        let v = classify_theorem(&tc(q, q.pow(-2), q.pow(3).neg()));
        assert!(v.labels.contains(&l(5, 4)));
        assert!(pipeline(q, q.pow(-2), q.pow(3).neg()).labels.contains(&l(5, 4)));
    }

    #[test]
    fn six_family_examples() {
        let q = rt(1, 9);
        let fam = |r, s, a| six_families(&tc(q, r, s), a).iter().map(|f| f.family).collect::<Vec<_>>();
        assert_eq!(fam(q.pow(-3), q.pow(3), 2), vec![1]);
        assert_eq!(fam(q.pow(-3), m1(), 2), vec![2]);
        let q = rt(1, 5);
        let r = rt(1, 7);
        let s = q.pow(-3).mul(r.pow(-3));
        assert_eq!(six_families(&tc(q, r, s), 3)[0].family, 4);
    }
}
