//! Braidings of two-dimensional subquotients W = k g_1 + k g_2 ⊂ B(V)⁺, their
//! validity checks, and the infinite-descent detector for the two recognized
//! families (q⁴, q²; q², q) and (q, q³; q³, q⁹).

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::braiding::{DiagonalBraiding, MultiDegree};
use crate::conditions::{evaluate_conditions, Condition, Limits, Triple};
use crate::cyclo::{CyclotomicNumber, RootOfUnity};
use crate::root_vectors::{deg_w, deg_z, Coefficients, RootVectorContext};
use crate::tensor::{group_act, is_zero_in_nichols, pair_element, TensorElement, TensorError};

pub const DEFAULT_MAX_STEPS: usize = 64;
pub const DEFAULT_SKEW_CUTOFF: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubquotientError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} is zero or of degree zero")]
    Degenerate(usize),
    #[error("generator {0} belongs to a different braiding")]
    ForeignGenerator(usize),
    #[error("braiding is in neither descent family (q^4, q^2; q^2, q) nor (q, q^3; q^3, q^9)")]
    UnrecognizedFamily,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// (χ(d_i, d_j))_{i,j}: the braiding of W with respect to generators of degrees d1, d2.
pub fn subquotient_braiding(br: &DiagonalBraiding, d1: MultiDegree, d2: MultiDegree) -> DiagonalBraiding {
    if let Some(r) = [(d1, d1), (d1, d2), (d2, d1), (d2, d2)]
        .into_iter()
        .map(|(x, y)| br.chi_root(x, y))
        .collect::<Option<Vec<_>>>()
    {
        return DiagonalBraiding::from_roots(r[0], r[1], r[2], r[3]);
    }
    DiagonalBraiding::new(br.chi(d1, d1), br.chi(d1, d2), br.chi(d2, d1), br.chi(d2, d2))
        .expect("characters of nonzero entries are nonzero")
}

#[derive(Debug, Clone, Serialize)]
pub struct SubquotientStep {
    pub source: DiagonalBraiding,
    pub generator_degrees: [MultiDegree; 2],
    #[serde(skip)]
    pub generators: Option<[TensorElement; 2]>,
    pub target: DiagonalBraiding,
}

impl SubquotientStep {
    pub fn new(source: DiagonalBraiding, d1: MultiDegree, d2: MultiDegree) -> Self {
        let target = subquotient_braiding(&source, d1, d2);
        SubquotientStep {
            source,
            generator_degrees: [d1, d2],
            generators: None,
            target,
        }
    }
}

/// Outcome of [`validate_subquotient`].
#[derive(Debug, Clone, Serialize)]
pub struct SubquotientValidation {
    pub degrees: [MultiDegree; 2],
    /// ⟨ι(g_i), g_i⟩.
    pub lambdas: [CyclotomicNumber; 2],
    pub off_diagonal_vanishes: bool,
    /// Skew-primitivity of ⟨ι(g_i), ·⟩ on A, verified on products up to this total degree.
    pub verified_to_degree: u32,
    pub counterexample: Option<String>,
}

impl SubquotientValidation {
    pub fn passes(&self) -> bool {
        self.off_diagonal_vanishes && self.lambdas.iter().all(|l| !l.is_zero()) && self.counterexample.is_none()
    }
}

/// Monomials in the generators of total degree ≤ cutoff, with their degrees.
fn generator_monomials(
    gens: &[TensorElement; 2],
    degs: [MultiDegree; 2],
    cutoff: u32,
) -> Result<Vec<(String, MultiDegree, TensorElement)>, TensorError> {
    let mut out = Vec::new();
    let mut frontier = vec![(String::new(), MultiDegree::default(), TensorElement::one(gens[0].braiding()))];
    while let Some((name, d, e)) = frontier.pop() {
        for k in 0..2 {
            let nd = d + degs[k];
            if nd.total() > cutoff {
                continue;
            }
            let ne = e.multiply(&gens[k])?;
            let nn = format!("{name}g{}", k + 1);
            out.push((nn.clone(), nd, ne.clone()));
            frontier.push((nn, nd, ne));
        }
    }
    Ok(out)
}

/// Checks ⟨ι(g_i), g_j⟩ = δ_ij λ_i with λ_i ≠ 0, and that ⟨ι(g_i), ·⟩ restricted
/// to the subalgebra A generated by g_1, g_2 satisfies
/// f(ab) = f(a) b + χ(−deg g_i, deg a) a f(b) in B(V), for products of total degree ≤ cutoff.
pub fn validate_subquotient(
    ctx: &RootVectorContext,
    gens: &[TensorElement; 2],
    cutoff: u32,
) -> Result<SubquotientValidation, SubquotientError> {
    let mut degs = [MultiDegree::default(); 2];
    for (k, g) in gens.iter().enumerate() {
        if **g.braiding() != **ctx.braiding() {
            return Err(SubquotientError::ForeignGenerator(k + 1));
        }
        match g.homogeneous_degree() {
            Ok(Some(d)) if d.total() > 0 => degs[k] = d,
            Ok(_) => return Err(SubquotientError::Degenerate(k + 1)),
            Err(_) => return Err(SubquotientError::NotHomogeneous(k + 1)),
        }
    }
    let scalar = |u: &TensorElement, e: &TensorElement| {
        pair_element(u, e).as_scalar().unwrap_or_else(CyclotomicNumber::zero)
    };
    let lambdas = [scalar(&gens[0], &gens[0]), scalar(&gens[1], &gens[1])];
    let off_diagonal_vanishes =
        scalar(&gens[0], &gens[1]).is_zero() && scalar(&gens[1], &gens[0]).is_zero();

    let monomials = generator_monomials(gens, degs, cutoff)?;
    let mut cache: HashMap<(usize, String), TensorElement> = HashMap::new();
    let mut counterexample = None;
    'outer: for (i, g) in gens.iter().enumerate() {
        let minus = (-(degs[i].a as i64), -(degs[i].b as i64));
        let mut f = |name: &str, e: &TensorElement| {
            cache
                .entry((i, name.to_string()))
                .or_insert_with(|| pair_element(g, e))
                .clone()
        };
        for (na, da, a) in &monomials {
            for (nb, db, b) in &monomials {
                if (*da + *db).total() > cutoff {
                    continue;
                }
                let ab = a.multiply(b)?;
                let lhs = f(&format!("{na}{nb}"), &ab);
                let fa = f(na, a);
                let fb = f(nb, b);
                let twisted = group_act(crate::braiding::GroupDegree(minus.0, minus.1), a);
                let rhs = fa.multiply(b)?.try_add(&twisted.multiply(&fb)?)?;
                let diff = lhs.try_add(&-&rhs)?;
                if !is_zero_in_nichols(&diff)? {
                    counterexample = Some(format!("f_{} on a = {na}, b = {nb}", i + 1));
                    break 'outer;
                }
            }
        }
    }
    Ok(SubquotientValidation {
        degrees: degs,
        lambdas,
        off_diagonal_vanishes,
        verified_to_degree: cutoff,
        counterexample,
    })
}

// ---------------------------------------------------------------------------
// Descent

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DescentFamily {
    /// (q⁴, q²; q², q)
    First,
    /// (q, q³; q³, q⁹)
    Second,
}

impl DescentFamily {
    fn exponents(self) -> [i64; 4] {
        match self {
            DescentFamily::First => [4, 2, 2, 1],
            DescentFamily::Second => [1, 3, 3, 9],
        }
    }

    pub fn braiding(self, q: RootOfUnity) -> DiagonalBraiding {
        let [a, b, c, d] = self.exponents().map(|k| q.pow(k));
        DiagonalBraiding::from_roots(a, b, c, d)
    }

    /// The parameter q if the braiding lies in the family.
    pub fn recognize(self, br: &DiagonalBraiding) -> Option<CyclotomicNumber> {
        let q = match self {
            DescentFamily::First => br.q22(),
            DescentFamily::Second => br.q11(),
        }
        .clone();
        let e = self.exponents();
        let entries = [br.q11(), br.q12(), br.q21(), br.q22()];
        entries
            .iter()
            .zip(e)
            .all(|(v, k)| **v == q.pow(k))
            .then_some(q)
    }
}

/// A scalar identity backing a side condition; [`Identity::holds`] re-evaluates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// χ(d, d)^power = value.
    SelfCharacter { degree: MultiDegree, power: u32, value: i64 },
    /// The entry q_{row,col} (1-based) equals an integer.
    Entry { row: usize, col: usize, value: i64 },
    /// d_{i,0} ≠ 0.
    D0Nonzero { index: usize },
    /// The named condition fails.
    ConditionFails { condition: Condition },
}

impl Identity {
    pub fn holds(&self, br: &DiagonalBraiding) -> bool {
        match self {
            Identity::SelfCharacter { degree, power, value } => {
                br.chi(*degree, *degree).pow(*power as i64) == CyclotomicNumber::from_integer(*value)
            }
            Identity::Entry { row, col, value } => *br.q(*row, *col) == CyclotomicNumber::from_integer(*value),
            Identity::D0Nonzero { index } => !Coefficients::exact(br).d0(*index).is_zero(),
            Identity::ConditionFails { condition } => {
                evaluate_conditions(br, Limits::default()).first_failure().map(|(c, _)| c) == Some(*condition)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SideCondition {
    pub step: u8,
    pub reason: String,
    pub identities: Vec<Identity>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DescentVerdict {
    /// The parameter returned to an earlier value after `period` steps.
    InfiniteChainCycle { period: usize },
    /// A later iterate violates one of the steps' side conditions, so that
    /// iterate is infinite dimensional.
    ReachedKnownInfinite { iterate: usize, blocked: SideCondition },
    /// The starting braiding itself stops at this step.
    Blocked(SideCondition),
    /// max_steps reached without a decision.
    Exhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentRecord {
    pub family: DescentFamily,
    pub parameter: String,
    pub step: SubquotientStep,
    /// ⟨y_2, w_1⟩ = μ z_2 with μ ≠ 0, z_2 ≠ 0 and x_{21} ≠ 0 (r ≠ 1).
    pub evidence: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentOutcome {
    pub chain: Vec<DescentRecord>,
    pub verdict: DescentVerdict,
}

fn side(step: u8, reason: &str, identities: Vec<Identity>) -> Option<SideCondition> {
    Some(SideCondition {
        step,
        reason: reason.to_string(),
        identities,
    })
}

fn chi_id(a: u32, b: u32, power: u32, value: i64) -> Identity {
    Identity::SelfCharacter {
        degree: MultiDegree::new(a, b),
        power,
        value,
    }
}

fn first_family_side(q: RootOfUnity) -> Option<SideCondition> {
    let is = |e: i64, v: RootOfUnity| q.pow(e) == v;
    let one = RootOfUnity::one();
    let m1 = RootOfUnity::minus_one();
    if is(4, one) {
        return side(1, "q^4 = 1: q11 = 1, against (A1)", vec![chi_id(1, 0, 1, 1)]);
    }
    if is(5, one) {
        return side(2, "q^5 = 1: chi(z_2, z_2) = 1, against (A5)", vec![chi_id(2, 1, 1, 1)]);
    }
    if is(4, m1) {
        return side(3, "q^4 = -1: chi(u_2, u_2) = 1 and u_2 is not nilpotent", vec![chi_id(1, 2, 1, 1)]);
    }
    if is(9, m1) {
        return side(4, "q^9 = -1: chi(z_1, z_1) = -1 with z_2 != 0, against (A5)", vec![chi_id(1, 1, 1, -1)]);
    }
    if is(13, m1) && q != m1 {
        return side(5, "q^13 = -1: chi(z_6, z_6) = -1, against (A5)", vec![chi_id(6, 1, 1, -1)]);
    }
    None
}

fn second_family_side(q: RootOfUnity) -> Option<SideCondition> {
    let one = RootOfUnity::one();
    let m1 = RootOfUnity::minus_one();
    if q.pow(3) == m1 {
        return side(
            1,
            "q^3 = -1 is excluded by the example's hypothesis",
            vec![Identity::Entry { row: 1, col: 2, value: -1 }],
        );
    }
    if q.pow(9) == one {
        return side(1, "q^9 = 1: q22 = 1, against (A1)", vec![chi_id(0, 1, 1, 1)]);
    }
    match q.order() {
        7 => return side(2, "q in R_7: chi(u_2, u_2) = 1 and u_2 is not nilpotent", vec![chi_id(1, 2, 1, 1)]),
        18 => return side(3, "q in R_18: chi(z_3, z_3) = 1, against (A5)", vec![chi_id(3, 1, 1, 1)]),
        5 => return side(4, "q in R_5: chi(z_2, z_2) = 1, against (A5)", vec![chi_id(2, 1, 1, 1)]),
        15 => {
            return side(
                4,
                "q in R_15: chi(z_2, z_2)^3 = 1 and d_2,0 != 0, against (A6)",
                vec![chi_id(2, 1, 3, 1), Identity::D0Nonzero { index: 2 }],
            )
        }
        4 => {
            return side(
                5,
                "q^2 = -1, against (A2)",
                vec![Identity::ConditionFails { condition: Condition::A2 }],
            )
        }
        44 => return side(5, "q in R_44: chi(z_19, z_19) = 1, against (A5)", vec![chi_id(19, 1, 1, 1)]),
        _ => {}
    }
    None
}

fn step6_evidence(br: &DiagonalBraiding) -> Result<String, String> {
    let mu = Coefficients::exact(br)
        .y2_w1()
        .map_err(|d| format!("<y_2, w_1> undefined: {} vanishes", d.0))?;
    let t = Triple::of(br).expect("root-of-unity braiding");
    if mu.is_zero() || t.z_zero(2) || t.r.is_one() {
        return Err("<y_2, w_1> = 0 or x_21 = 0".into());
    }
    Ok(format!("<y_2, w_1> = ({mu}) z_2 with z_2 != 0, and r != 1"))
}

/// Iterates the step-6 subquotient W = k w_1 + k x_{21} from a braiding in one
/// of the two recognized families, checking the per-step side conditions at
/// each iterate.
pub fn descent_chain(br: &DiagonalBraiding, max_steps: usize) -> Result<DescentOutcome, SubquotientError> {
    let (mut family, q) = [DescentFamily::First, DescentFamily::Second]
        .into_iter()
        .find_map(|f| f.recognize(br).map(|q| (f, q)))
        .ok_or(SubquotientError::UnrecognizedFamily)?;
    let Some(mut q) = q.as_root_of_unity() else {
        let blocked = SideCondition {
            step: 1,
            reason: "q is not a root of unity, against (A1)".into(),
            identities: vec![Identity::ConditionFails { condition: Condition::A1 }],
        };
        return Ok(DescentOutcome {
            chain: Vec::new(),
            verdict: DescentVerdict::Blocked(blocked),
        });
    };
    let mut seen: HashMap<(DescentFamily, RootOfUnity), usize> = HashMap::from([((family, q), 0)]);
    let mut chain = Vec::new();
    for iterate in 0..max_steps {
        let source = family.braiding(q);
        let blocked = match family {
            DescentFamily::First => first_family_side(q),
            DescentFamily::Second => second_family_side(q),
        };
        if let Some(blocked) = blocked {
            let verdict = if iterate == 0 {
                DescentVerdict::Blocked(blocked)
            } else {
                DescentVerdict::ReachedKnownInfinite { iterate, blocked }
            };
            return Ok(DescentOutcome { chain, verdict });
        }
        let evidence = match step6_evidence(&source) {
            Ok(e) => e,
            Err(reason) => {
                let blocked = SideCondition {
                    step: 6,
                    reason,
                    identities: Vec::new(),
                };
                return Ok(DescentOutcome {
                    chain,
                    verdict: DescentVerdict::Blocked(blocked),
                });
            }
        };
        let step = SubquotientStep::new(source, deg_w(1), deg_z(1));
        let next_q = match family {
            DescentFamily::First => q.pow(9),
            DescentFamily::Second => q.pow(16),
        };
        chain.push(DescentRecord {
            family,
            parameter: q.to_string(),
            step,
            evidence,
        });
        family = DescentFamily::First;
        q = next_q;
        if let Some(first) = seen.get(&(family, q)) {
            return Ok(DescentOutcome {
                verdict: DescentVerdict::InfiniteChainCycle {
                    period: chain.len() - first,
                },
                chain,
            });
        }
        seen.insert((family, q), chain.len());
    }
    Ok(DescentOutcome {
        chain,
        verdict: DescentVerdict::Exhausted,
    })
}

/// Context-backed generators (w_1, x_{21}) of the step-6 subquotient.
pub fn step6_generators(br: &Arc<DiagonalBraiding>) -> Result<[TensorElement; 2], crate::root_vectors::RootVectorError> {
    let mut ctx = RootVectorContext::new(br);
    Ok([ctx.w(1)?, ctx.z(1)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(k: i64, n: u32) -> RootOfUnity {
        RootOfUnity::new(k, n)
    }

    #[test]
    fn example_braidings() {
        let q = rt(1, 11);
        let t = subquotient_braiding(&DescentFamily::First.braiding(q), deg_w(1), deg_z(1));
        assert_eq!(t, DiagonalBraiding::from_roots(q.pow(36), q.pow(18), q.pow(18), q.pow(9)));
        let q = rt(1, 7);
        let t = subquotient_braiding(&DescentFamily::Second.braiding(q), deg_w(1), deg_z(1));
        assert_eq!(t, DiagonalBraiding::from_roots(q.pow(64), q.pow(32), q.pow(32), q.pow(16)));
        let br = DiagonalBraiding::from_roots(rt(1, 5), rt(2, 7), rt(3, 7), rt(1, 3));
        assert_eq!(subquotient_braiding(&br, MultiDegree::E1, MultiDegree::E2), br);
    }

    #[test]
    fn eleven_cycles() {
        let out = descent_chain(&DescentFamily::First.braiding(rt(1, 11)), DEFAULT_MAX_STEPS).unwrap();
        assert!(matches!(out.verdict, DescentVerdict::InfiniteChainCycle { period: 5 }), "{out:?}");
        assert_eq!(out.chain.len(), 5);
    }

    #[test]
    fn blocked_examples() {
        let out = descent_chain(&DescentFamily::First.braiding(rt(1, 26)), 64).unwrap();
        match out.verdict {
            DescentVerdict::Blocked(s) => {
                assert_eq!(s.step, 5);
                assert!(s.identities.iter().all(|i| i.holds(&DescentFamily::First.braiding(rt(1, 26)))));
            }
            v => panic!("{v:?}"),
        }
        let out = descent_chain(&DescentFamily::Second.braiding(rt(1, 6)), 64).unwrap();
        assert!(matches!(out.verdict, DescentVerdict::Blocked(ref s) if s.step == 1), "{out:?}");
    }

    #[test]
    fn unrecognized() {
        let br = DiagonalBraiding::from_roots(rt(1, 5), rt(1, 7), rt(1, 7), rt(1, 3));
        assert_eq!(descent_chain(&br, 8).unwrap_err(), SubquotientError::UnrecognizedFamily);
    }
}
