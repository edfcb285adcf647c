//! The necessary conditions (A1)–(A8) for dim B(V) < ∞, the invariant a and
//! the basis normalization (A3).
//!
//! Vanishing of z_i and u_i, and every χ-value, is decided by exponent
//! arithmetic on the twist class (q11, r, q22), r = q12 q21. The sums d_{i,0}
//! and the w-pairings go through [`ScalarOracle`].
//!
//! (A5)–(A7) do not depend on (A3), so they are checked in the input ordering
//! first and then, after a swap, in the normalized one. A failure in either
//! ordering is a valid obstruction.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::braiding::DiagonalBraiding;
use crate::cyclo::{CyclotomicNumber, RootOfUnity};
use crate::root_vectors::{RootVectorContext, ScalarOracle, DEFAULT_I_MAX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("neither z_i nor u_i vanishes for i <= {cap}")]
    NoTermination { cap: usize },
    #[error("the invariant a needs z_2 != 0")]
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::A1,
        Condition::A2,
        Condition::A3,
        Condition::A4,
        Condition::A5,
        Condition::A6,
        Condition::A7,
        Condition::A8,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

/// Which ordering of the basis a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    Input,
    Normalized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub quantity: String,
    pub value: String,
    pub ordering: Ordering,
}

impl Witness {
    fn new(index: Option<usize>, quantity: impl Into<String>, value: impl ToString) -> Self {
        Witness {
            index,
            quantity: quantity.into(),
            value: value.to_string(),
            ordering: Ordering::Input,
        }
    }

    fn in_ordering(mut self, ordering: Ordering) -> Self {
        self.ordering = ordering;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assessment {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl Assessment {
    fn holds(witness: Option<Witness>) -> Self {
        Assessment {
            status: Status::Holds,
            witness,
        }
    }

    fn fails(witness: Witness) -> Self {
        Assessment {
            status: Status::Fails,
            witness: Some(witness),
        }
    }

    fn not_applicable() -> Self {
        Assessment {
            status: Status::NotApplicable,
            witness: None,
        }
    }
}

/// Index bounds for the scans. The quantifier scans always run up to the
/// first vanishing z_i, which may exceed `index_cap` for large orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub index_cap: usize,
    /// Evaluate failing scalar witnesses exactly; when off, a nonzero
    /// modular image is reported as "nonzero".
    pub exact_witnesses: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            index_cap: DEFAULT_I_MAX,
            exact_witnesses: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    #[serde(flatten)]
    pub conditions: BTreeMap<Condition, Assessment>,
    pub swapped: bool,
    pub a: Option<usize>,
    /// The braiding in the ordering fixed by (A3), once (A3) has run.
    #[serde(skip)]
    pub normalized: Option<DiagonalBraiding>,
}

impl ConditionReport {
    pub fn status(&self, c: Condition) -> Status {
        self.conditions[&c].status
    }

    /// All of A1–A8 hold or are not applicable.
    pub fn passes(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<(Condition, &Assessment)> {
        self.conditions
            .iter()
            .find(|(_, v)| v.status == Status::Fails)
            .map(|(c, v)| (*c, v))
    }
}

/// The twist class as exponents: q = q11, r = q12 q21, s = q22.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Triple {
    pub q: RootOfUnity,
    pub r: RootOfUnity,
    pub s: RootOfUnity,
}

impl Triple {
    pub fn of(br: &DiagonalBraiding) -> Option<Triple> {
        let [q11, q12, q21, q22] = match br.roots() {
            Some(roots) => roots,
            None => {
                let tc = br.twist_class();
                let [q, r, s] = tc.roots()?;
                return Some(Triple { q, r, s });
            }
        };
        Some(Triple {
            q: q11,
            r: q12.mul(q21),
            s: q22,
        })
    }

    pub fn swapped(self) -> Triple {
        Triple {
            q: self.s,
            r: self.r,
            s: self.q,
        }
    }

    /// z_i = 0 iff b_i (i)!_q = 0.
    pub fn z_zero(self, i: usize) -> bool {
        factorial_vanishes(self.q, i) || (0..i).any(|j| self.q.pow(j as i64).mul(self.r).is_one())
    }

    /// u_i = 0 iff c_i (i)!_s = 0.
    pub fn u_zero(self, i: usize) -> bool {
        factorial_vanishes(self.s, i) || (0..i).any(|j| self.s.pow(j as i64).mul(self.r).is_one())
    }

    /// min{i ≥ 1 : z_i = 0}; at most ord(q).
    pub fn z_min(self) -> usize {
        first_vanishing(self.q, self.r)
    }

    pub fn u_min(self) -> usize {
        first_vanishing(self.s, self.r)
    }

    /// χ(z_i, z_i) = q^{i²} r^i s.
    pub fn chi_zz(self, i: usize) -> RootOfUnity {
        let i = i as i64;
        self.q.pow(i * i).mul(self.r.pow(i)).mul(self.s)
    }

    /// χ(d, d) = q^{a²} r^{ab} s^{b²} for d = (a, b).
    pub fn chi_self(self, d: crate::braiding::MultiDegree) -> RootOfUnity {
        let (a, b) = (d.a as i64, d.b as i64);
        self.q.pow(a * a).mul(self.r.pow(a * b)).mul(self.s.pow(b * b))
    }

    /// a = min{i ≥ 1 : z_{i+2} = 0}, or None when z_2 = 0.
    pub fn a(self) -> Option<usize> {
        let m = self.z_min();
        (m >= 3).then(|| m - 2)
    }
}

fn factorial_vanishes(q: RootOfUnity, i: usize) -> bool {
    !q.is_one() && i >= q.order() as usize
}

/// First i ≥ 1 with (i)!_q ∏_{j<i}(1 − q^j r) = 0. Needs q ≠ 1.
fn first_vanishing(q: RootOfUnity, r: RootOfUnity) -> usize {
    let n = q.order() as usize;
    let mut x = r;
    for j in 0..n {
        if x.is_one() {
            return j + 1;
        }
        x = x.mul(q);
    }
    n
}

fn in_r_at_least_2(x: &CyclotomicNumber) -> Option<RootOfUnity> {
    x.as_root_of_unity().filter(|r| !r.is_one())
}

/// Swaps the basis when needed so that min{i | u_i = 0} ≤ min{i | z_i = 0};
/// a tie keeps the input ordering.
#[allow(non_snake_case)]
pub fn normalize_A3(br: &DiagonalBraiding) -> Result<(DiagonalBraiding, bool), ConditionError> {
    normalize_with(br, Limits::default())
}

fn normalize_with(br: &DiagonalBraiding, limits: Limits) -> Result<(DiagonalBraiding, bool), ConditionError> {
    let (z_min, u_min) = minima(br, limits)?;
    let swap = match (z_min, u_min) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(z), Some(u)) => u > z,
    };
    Ok(if swap {
        (br.swap_basis(), true)
    } else {
        (br.clone(), false)
    })
}

/// The first vanishing indices of z and u, None meaning "never".
fn minima(br: &DiagonalBraiding, limits: Limits) -> Result<(Option<usize>, Option<usize>), ConditionError> {
    if let Some(t) = Triple::of(br) {
        if !t.q.is_one() && !t.s.is_one() {
            return Ok((Some(t.z_min()), Some(t.u_min())));
        }
    }
    // r not a root of unity: b_i and c_i never vanish, only the factorials can.
    let tc = br.twist_class();
    let r = tc.q12q21.as_root_of_unity();
    let side = |d: &CyclotomicNumber| -> Option<usize> {
        let q = in_r_at_least_2(d)?;
        Some(match r {
            Some(r) => first_vanishing(q, r),
            None => q.order() as usize,
        })
    };
    let (z, u) = (side(&tc.q11), side(&tc.q22));
    if z.is_none() && u.is_none() {
        return Err(ConditionError::NoTermination {
            cap: limits.index_cap,
        });
    }
    Ok((z, u))
}

/// Evaluates (A1)–(A8) in order. After the first failure the remaining
/// conditions are reported as not applicable.
pub fn evaluate_conditions(br: &DiagonalBraiding, limits: Limits) -> ConditionReport {
    let mut out = BTreeMap::new();
    let report = |out: &mut BTreeMap<Condition, Assessment>, c, v: Assessment| -> bool {
        let failed = v.status == Status::Fails;
        out.insert(c, v);
        failed
    };
    let finish = |mut out: BTreeMap<Condition, Assessment>, swapped, a, normalized| {
        for c in Condition::ALL {
            out.entry(c).or_insert_with(Assessment::not_applicable);
        }
        ConditionReport {
            conditions: out,
            swapped,
            a,
            normalized,
        }
    };

    // (A1)
    for (name, v) in [("q11", br.q11()), ("q22", br.q22())] {
        if in_r_at_least_2(v).is_none() {
            report(&mut out, Condition::A1, Assessment::fails(Witness::new(None, name, v)));
            return finish(out, false, None, None);
        }
    }
    report(&mut out, Condition::A1, Assessment::holds(None));

    // (A2)
    let tc = br.twist_class();
    let r = &tc.q12q21;
    if !r.is_one() {
        let x = &(&tc.q11 * r) * &tc.q22;
        if in_r_at_least_2(&x).is_none() {
            let w = Witness::new(None, "q11 q12 q21 q22", &x);
            report(&mut out, Condition::A2, Assessment::fails(w));
            return finish(out, false, None, None);
        }
    }
    report(&mut out, Condition::A2, Assessment::holds(None));

    // From here on q11, r, q22 are roots of unity.
    let input = Triple::of(br).expect("(A1) and (A2) force roots of unity");

    // (A3)
    let (normalized, swapped) = match normalize_with(br, limits) {
        Ok(v) => v,
        Err(e) => {
            report(&mut out, Condition::A3, Assessment::fails(Witness::new(None, "normalization", e)));
            return finish(out, false, None, None);
        }
    };
    let t = if swapped { input.swapped() } else { input };
    let w = Witness::new(
        None,
        "min u-index, min z-index",
        format!("{}, {}", t.u_min(), t.z_min()),
    )
    .in_ordering(Ordering::Normalized);
    report(&mut out, Condition::A3, Assessment::holds(Some(w)));

    // (A4)
    let a4 = a4_holds(t);
    let v = if a4 {
        Assessment::holds(None)
    } else {
        let w = Witness::new(Some(2), "z_2", "0").in_ordering(Ordering::Normalized);
        Assessment::fails(w)
    };
    if report(&mut out, Condition::A4, v) {
        return finish(out, swapped, None, Some(normalized));
    }

    // (A5)–(A7), input ordering first.
    let mut orderings = vec![(Ordering::Input, input, Arc::new(br.clone()))];
    if swapped {
        orderings.push((Ordering::Normalized, t, Arc::new(normalized.clone())));
    }
    let mut oracles: Vec<Option<ScalarOracle>> = orderings.iter().map(|_| None).collect();
    type Check = fn(Triple, &DiagonalBraiding, &mut Option<ScalarOracle>, bool) -> Option<Witness>;
    let checks: [(Condition, Check); 3] = [
        (Condition::A5, check_a5),
        (Condition::A6, check_a6),
        (Condition::A7, check_a7),
    ];
    for (c, check) in checks {
        let failure = orderings
            .iter()
            .zip(oracles.iter_mut())
            .find_map(|((o, tr, b), oracle)| check(*tr, b, oracle, limits.exact_witnesses).map(|w| w.in_ordering(*o)));
        let v = match failure {
            Some(w) => Assessment::fails(w),
            None => Assessment::holds(None),
        };
        if report(&mut out, c, v) {
            return finish(out, swapped, t.a(), Some(normalized));
        }
    }

    // (A8)
    let a = t.a();
    let v = match a {
        None => Assessment::not_applicable(),
        Some(a) => match (1..a + 2).find(|m| t.q.pow(*m as i64).is_one()) {
            Some(m) => Assessment::fails(
                Witness::new(Some(m), "q11^m", "1").in_ordering(Ordering::Normalized),
            ),
            None => Assessment::holds(None),
        },
    };
    report(&mut out, Condition::A8, v);
    finish(out, swapped, a, Some(normalized))
}

/// r = 1, or z_2 = u_2 = 0, or z_2 ≠ 0.
fn a4_holds(t: Triple) -> bool {
    t.r.is_one() || (t.z_zero(2) && t.u_zero(2)) || !t.z_zero(2)
}

fn oracle<'a>(slot: &'a mut Option<ScalarOracle>, br: &DiagonalBraiding) -> &'a ScalarOracle {
    slot.get_or_insert_with(|| ScalarOracle::new(br))
}

/// χ(z_i,z_i) ≠ 1 while z_i ≠ 0, and χ(z_i,z_i) = −1 forces z_{i+1} = 0.
fn check_a5(t: Triple, _: &DiagonalBraiding, _: &mut Option<ScalarOracle>, _: bool) -> Option<Witness> {
    (1..t.z_min()).find_map(|i| {
        let chi = t.chi_zz(i);
        if chi.is_one() {
            Some(Witness::new(Some(i), "chi(z_i,z_i)", "1"))
        } else if chi == RootOfUnity::minus_one() && !t.z_zero(i + 1) {
            Some(Witness::new(Some(i), "p_i^-1 with z_{i+1} != 0", "-1"))
        } else {
            None
        }
    })
}

/// p_i³ = 1 and z_{i+1} ≠ 0 force d_{i,0} = 0.
fn check_a6(t: Triple, br: &DiagonalBraiding, slot: &mut Option<ScalarOracle>, exact: bool) -> Option<Witness> {
    let n = t.z_min();
    (1..n.saturating_sub(1)).find_map(|i| {
        if !t.chi_zz(i).pow(3).is_one() {
            return None;
        }
        let o = oracle(slot, br);
        let zero = crate::scalar_is_zero!(o, |c| Ok(c.d0(i))).expect("d_{i,0} has no denominator");
        (!zero).then(|| match exact {
            true => Witness::new(Some(i), "d_{i,0}", o.exact().d0(i)),
            false => Witness::new(Some(i), "d_{i,0}", "nonzero"),
        })
    })
}

/// ⟨ẑ_{i+1}ẑ_{i−1}, w_i⟩ = λ_i P_{i+1} must vanish whenever z_{i+1} ≠ 0;
/// P_{i+1} ≠ 0 there, so λ_i is tested.
fn check_a7(t: Triple, br: &DiagonalBraiding, slot: &mut Option<ScalarOracle>, exact: bool) -> Option<Witness> {
    let n = t.z_min();
    (1..n.saturating_sub(1)).find_map(|i| {
        // λ_i carries the factor q11 p_i − 1
        if t.q.mul(t.chi_zz(i).inv()).is_one() {
            return None;
        }
        let o = oracle(slot, br);
        match crate::scalar_is_zero!(o, |c| c.w_lambda(i)) {
            Ok(true) => None,
            Ok(false) => {
                let name = "<z^_{i+1} z^_{i-1}, w_i>";
                Some(match exact {
                    true => Witness::new(Some(i), name, o.exact().w_pairing(i).expect("denominator checked")),
                    false => Witness::new(Some(i), name, "nonzero"),
                })
            }
            // (2)_{q11⁻¹}(2)_{p_i} = 0 cannot occur while (A5) holds and z_{i+1} ≠ 0
            Err(d) => Some(Witness::new(Some(i), "degenerate w_i", d.0)),
        }
    })
}

/// a = min{i ≥ 1 : z_{i+2} = 0}.
pub fn a_invariant(ctx: &RootVectorContext) -> Result<usize, ConditionError> {
    if let Some(t) = Triple::of(ctx.braiding()) {
        if !t.q.is_one() {
            return t.a().ok_or(ConditionError::Inapplicable);
        }
    }
    if ctx.z_is_zero(2) {
        return Err(ConditionError::Inapplicable);
    }
    let cap = ctx.i_max();
    (1..=cap)
        .find(|i| ctx.z_is_zero(i + 2))
        .ok_or(ConditionError::NoTermination { cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64, n: u32) -> CyclotomicNumber {
        CyclotomicNumber::root(k, n)
    }

    fn braiding(q11: CyclotomicNumber, q12: CyclotomicNumber, q21: CyclotomicNumber, q22: CyclotomicNumber) -> DiagonalBraiding {
        DiagonalBraiding::new(q11, q12, q21, q22).unwrap()
    }

    #[test]
    fn non_root_fails_a1() {
        let one = CyclotomicNumber::one();
        let br = braiding(CyclotomicNumber::from_integer(2), one.clone(), one.clone(), z(1, 3));
        let rep = evaluate_conditions(&br, Limits::default());
        assert_eq!(rep.status(Condition::A1), Status::Fails);
        assert_eq!(rep.conditions[&Condition::A1].witness.as_ref().unwrap().quantity, "q11");
        for c in &Condition::ALL[1..] {
            assert_eq!(rep.status(*c), Status::NotApplicable);
        }
    }

    #[test]
    fn first_example_fails_a5_at_six() {
        // q of order 26
        let q = |k| z(k, 26);
        let br = braiding(q(4), q(2), q(2), q(1));
        let rep = evaluate_conditions(&br, Limits::default());
        let (c, v) = rep.first_failure().unwrap();
        assert_eq!(c, Condition::A5);
        let w = v.witness.as_ref().unwrap();
        assert_eq!((w.index, w.value.as_str(), w.ordering), (Some(6), "-1", Ordering::Input));
    }

    #[test]
    fn second_example_fails_a6_at_two() {
        let q = |k| z(k, 15);
        let br = braiding(q(1), q(3), q(3), q(9));
        let rep = evaluate_conditions(&br, Limits::default());
        let (c, v) = rep.first_failure().unwrap();
        assert_eq!(c, Condition::A6);
        assert_eq!(v.witness.as_ref().unwrap().index, Some(2));
    }

    #[test]
    fn cartan_sixth_root_has_a_one() {
        let q = z(1, 6);
        let br = braiding(q.clone(), q.pow(-2), CyclotomicNumber::one(), q.pow(2));
        let ctx = RootVectorContext::new(&Arc::new(br.clone()));
        assert_eq!(a_invariant(&ctx), Ok(1));
        let rep = evaluate_conditions(&br, Limits::default());
        assert!(rep.passes(), "{rep:?}");
        assert_eq!(rep.a, Some(1));
    }

    #[test]
    fn trivial_r_never_swaps() {
        let one = CyclotomicNumber::one();
        let br = braiding(z(1, 5), one.clone(), one.clone(), z(1, 3));
        let (out, swapped) = normalize_A3(&br).unwrap();
        assert!(!swapped);
        assert_eq!(out, br);
        let ctx = RootVectorContext::new(&Arc::new(br));
        assert_eq!(a_invariant(&ctx), Err(ConditionError::Inapplicable));
    }
}
